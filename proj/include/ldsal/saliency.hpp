#ifndef LDSAL_SALIENCY_HPP
#define LDSAL_SALIENCY_HPP

#include <vector>

#include "ldsal/raster.hpp"

namespace ldsal {

struct IttiParams {
    int pyramid_levels = 9;  // clamped so the coarsest level stays >= 8x8
    std::vector<int> center_levels = {2, 3, 4};
    std::vector<int> surround_deltas = {3, 4};
    int orientation_count = 4;  // filters at 0/45/90/135 degrees
    int output_level = 4;       // conspicuity maps are summed at this level

    void validate() const;
};

struct SigParams {
    int working_width = 64;
    int working_height = 48;
    double blur_sigma = 2.5;  // at working size

    void validate() const;
};

/// Feature-pyramid contrast saliency: intensity, color-opponency and
/// orientation channels over a Gaussian pyramid, center-surround
/// differences with cross-level rescaling, max-based map normalization,
/// conspicuity averaging, upsampled and min-max normalized.
FloatMap itti_saliency(const ColorImage& image, const IttiParams& params);

/// DCT image-signature saliency: per channel at working size, keep only
/// the signs of the DCT coefficients, reconstruct, square, sum channels,
/// blur, upsample, min-max normalize.
FloatMap signature_saliency(const GrayImage& image, const SigParams& params);
FloatMap signature_saliency(const ColorImage& image, const SigParams& params);

/// Guided combination: pointwise product of a bottom-up map and the
/// spatial prior, min-max normalized. Both maps must be non-negative and
/// share dimensions.
FloatMap combine(const FloatMap& bottom_up, const FloatMap& prior);

namespace detail {
/// Orthonormal 2-D DCT (type II) and its inverse, exposed for tests.
std::vector<double> dct2(const std::vector<double>& values, int width, int height);
std::vector<double> idct2(const std::vector<double>& coeffs, int width, int height);
/// Max-based normalization operator: min-max rescale then scale by
/// (M - mean-of-other-local-maxima)^2.
FloatMap normalize_peaks(const FloatMap& map);
}  // namespace detail

}  // namespace ldsal

#endif
