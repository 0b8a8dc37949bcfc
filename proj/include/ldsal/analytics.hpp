#ifndef LDSAL_ANALYTICS_HPP
#define LDSAL_ANALYTICS_HPP

#include <vector>

#include "ldsal/fixation.hpp"
#include "ldsal/raster.hpp"

namespace ldsal {

struct DensityParams {
    double sigma = 16.0;           // blur scale, pixels
    bool drop_first_fixation = true;

    void validate() const;
};

/// Fixation density of one segment of a human-marked segmentation.
struct SegmentSaliency {
    int segment_id = 0;
    int fixation_count = 0;
    long long area = 0;           // pixels
    double density = 0.0;         // fixations per pixel
    double saliency_score = 0.0;  // density / max density over the image
};

/// Segments whose closure score clears the threshold, with their pixels.
struct ClosedRegionSet {
    std::vector<int> member_segments;
    ContourMask pixels;
};

/// The ten shape descriptors measured per segment.
struct ShapeFeatureVector {
    double area_ratio = 0.0;
    double centralization = 0.0;
    double perimeter_ratio = 0.0;
    double axis_ratio = 0.0;
    double eccentricity = 0.0;
    double orientation = 0.0;  // major-axis angle, radians in (-pi/2, pi/2]
    double equiv_diameter = 0.0;
    double solidity = 0.0;
    double extent = 0.0;
    double closure_score = 0.0;
};

constexpr int kShapeFeatureCount = 10;
extern const char* const kShapeFeatureNames[kShapeFeatureCount];
double shape_feature(const ShapeFeatureVector& v, int index);

struct GuidanceMetrics {
    double pof = 0.0;   // fixations near contours / all fixations
    double poc = 0.0;   // contour pixels near fixations / all contour pixels
    double pofc = 0.0;  // fixations near closed regions / all fixations
    double pocc = 0.0;  // dilated closed-region pixels / image area
};

struct FeatureCorrelation {
    double r = 0.0;
    bool degenerate = false;  // constant column, correlation undefined
};

/// Blurred fixation density: unit impulses at floor-binned retained
/// fixations, Gaussian blur at sigma. Empty retained set yields a zero
/// map (flagged via `empty` when given).
FloatMap density_map(const FixationSet& fixations, int width, int height, const DensityParams& params,
                     bool* empty = nullptr);

/// Pearson correlation over all pixels; constant maps raise
/// UndefinedValueError.
double cc(const FloatMap& f, const FloatMap& g);

/// Mean absolute error. Inputs already in [0,1] are used as-is; anything
/// else is min-max normalized first.
double mae(const FloatMap& f, const FloatMap& g);

/// Per-segment fixation density, scores normalized by the per-image
/// maximum (all zero when nothing is retained).
std::vector<SegmentSaliency> segment_saliency(const LabelMap& labels, const FixationSet& fixations,
                                              const DensityParams& params);

/// Paint per-segment scores back onto the raster.
FloatMap segment_score_map(const LabelMap& labels, const std::vector<SegmentSaliency>& scores);

/// Equal-weight fusion of two segment-saliency rasters: (a + b),
/// min-max normalized.
FloatMap hierarchical_objects(const FloatMap& map_a, const FloatMap& map_b);

/// 1 - NB/NR for one segment: NR counts boundary pixels (segment pixels
/// 4-adjacent to another label or to the image border), NB the subset on
/// the image border.
double closure_score(const LabelMap& labels, int segment_id);

/// Segments with closure score strictly above the threshold, plus the
/// union of their pixels.
ClosedRegionSet closed_regions(const LabelMap& labels, double threshold = 0.9);

/// The four fixation/contour co-location percentages under n x n
/// dilation. Fixation counts are multiset counts; contour and region
/// counts are pixel counts. Raises UndefinedValueError when a denominator
/// is empty (no retained fixations for PoF/PoFC, no contour pixels for
/// PoC).
GuidanceMetrics guidance_metrics(const FixationSet& fixations, const ContourMask& contours,
                                 const ClosedRegionSet& closed, int n,
                                 const DensityParams& params = DensityParams{});

/// The ten shape descriptors of one segment.
ShapeFeatureVector shape_features(const LabelMap& labels, int segment_id);

/// Pearson r of each feature against log(saliency + 1e-6) across
/// segments. Requires at least 3 segments; constant columns come back as
/// r = 0 with the degenerate flag set.
std::vector<FeatureCorrelation> feature_correlation(const std::vector<ShapeFeatureVector>& features,
                                                    const std::vector<double>& scores);

}  // namespace ldsal

#endif
