#include "ldsal/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldsal {

namespace {

constexpr double kPi = 3.14159265358979323846;

FloatMap decimate2(const FloatMap& map) {
    const int w = (map.width() + 1) / 2, h = (map.height() + 1) / 2;
    FloatMap out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out(x, y) = map(2 * x, 2 * y);
    return out;
}

std::vector<FloatMap> gaussian_pyramid(const FloatMap& base, int levels) {
    std::vector<FloatMap> pyr;
    pyr.push_back(base);
    for (int l = 1; l < levels; ++l) pyr.push_back(decimate2(gaussian_blur(pyr.back(), 1.0)));
    return pyr;
}

FloatMap abs_difference(const FloatMap& a, const FloatMap& b_coarse) {
    const FloatMap b = resize_bilinear(b_coarse, a.width(), a.height());
    FloatMap out(a.width(), a.height());
    for (std::size_t i = 0; i < out.size(); ++i)
        out.data()[i] = std::fabs(a.data()[i] - b.data()[i]);
    return out;
}

void accumulate(FloatMap& into, const FloatMap& term) {
    for (std::size_t i = 0; i < into.size(); ++i) into.data()[i] += term.data()[i];
}

// normalize01 with a noise gate: maps whose dynamic range is at the level
// of double round-off (borders of a blurred constant differ by ~1e-16)
// must not be stretched to full scale.
FloatMap normalize01_gated(const FloatMap& map) {
    const auto [mn, mx] = std::minmax_element(map.data().begin(), map.data().end());
    if (*mx - *mn <= 1e-12 * std::max(1.0, std::fabs(*mx))) return FloatMap(map.width(), map.height());
    return normalize01(map);
}

// Even-symmetric oriented bar filter: a central elongated Gaussian minus
// two flanks offset perpendicular to the bar. Zero-mean 9x9 kernel.
std::vector<double> oriented_kernel(double theta) {
    constexpr int kRadius = 4;
    constexpr double kSigmaAlong = 2.2, kSigmaAcross = 0.9, kFlankOffset = 1.8;
    std::vector<double> k((2 * kRadius + 1) * (2 * kRadius + 1));
    const double c = std::cos(theta), s = std::sin(theta);
    std::size_t i = 0;
    double sum = 0.0;
    for (int y = -kRadius; y <= kRadius; ++y)
        for (int x = -kRadius; x <= kRadius; ++x, ++i) {
            const double along = x * c + y * s;
            const double across = -x * s + y * c;
            const double ga = std::exp(-along * along / (2.0 * kSigmaAlong * kSigmaAlong));
            const double center = std::exp(-across * across / (2.0 * kSigmaAcross * kSigmaAcross));
            const double flank1 = std::exp(-(across - kFlankOffset) * (across - kFlankOffset) /
                                           (2.0 * kSigmaAcross * kSigmaAcross));
            const double flank2 = std::exp(-(across + kFlankOffset) * (across + kFlankOffset) /
                                           (2.0 * kSigmaAcross * kSigmaAcross));
            k[i] = ga * (center - 0.5 * (flank1 + flank2));
            sum += k[i];
        }
    for (double& v : k) v -= sum / k.size();  // exact zero DC
    return k;
}

FloatMap convolve_abs(const FloatMap& map, const std::vector<double>& kernel, int radius) {
    const int w = map.width(), h = map.height();
    FloatMap out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            std::size_t i = 0;
            for (int dy = -radius; dy <= radius; ++dy)
                for (int dx = -radius; dx <= radius; ++dx, ++i)
                    acc += kernel[i] * map(reflect_index(x + dx, w), reflect_index(y + dy, h));
            out(x, y) = std::fabs(acc);
        }
    return out;
}

}  // namespace

namespace detail {

FloatMap normalize_peaks(const FloatMap& map) {
    FloatMap nm = normalize01_gated(map);
    const int w = nm.width(), h = nm.height();
    double peak_sum = 0.0;
    int peak_count = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double v = nm(x, y);
            if (v <= 0.0) continue;
            bool is_max = true;
            for (int dy = -1; dy <= 1 && is_max; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int nx = x + dx, ny = y + dy;
                    if (nm.in_bounds(nx, ny) && nm(nx, ny) >= v) {
                        is_max = false;
                        break;
                    }
                }
            if (is_max && v < 1.0) {  // local maxima other than the global one
                peak_sum += v;
                ++peak_count;
            }
        }
    const double m_bar = peak_count > 0 ? peak_sum / peak_count : 0.0;
    const double scale = (1.0 - m_bar) * (1.0 - m_bar);
    for (double& v : nm.data()) v *= scale;
    return nm;
}

}  // namespace detail

void IttiParams::validate() const {
    if (pyramid_levels < 2) throw std::invalid_argument("IttiParams: pyramid_levels must be >= 2");
    if (center_levels.empty() || surround_deltas.empty())
        throw std::invalid_argument("IttiParams: center/surround sets must be non-empty");
    for (const int c : center_levels)
        if (c < 0) throw std::invalid_argument("IttiParams: center levels must be >= 0");
    for (const int d : surround_deltas)
        if (d < 1) throw std::invalid_argument("IttiParams: surround deltas must be >= 1");
    if (orientation_count < 1) throw std::invalid_argument("IttiParams: orientation_count must be >= 1");
    if (output_level < 0) throw std::invalid_argument("IttiParams: output_level must be >= 0");
}

FloatMap itti_saliency(const ColorImage& image, const IttiParams& params) {
    params.validate();
    const int w = image.width(), h = image.height();

    // clamp the pyramid so the coarsest level keeps both dimensions >= 8
    int levels = 1;
    for (int cw = w, ch = h; levels < params.pyramid_levels; ++levels) {
        cw = (cw + 1) / 2;
        ch = (ch + 1) / 2;
        if (cw < 8 || ch < 8) break;
    }

    std::vector<std::pair<int, int>> pairs;  // (center, surround)
    for (const int c : params.center_levels)
        for (const int d : params.surround_deltas)
            if (c + d < levels) pairs.emplace_back(c, c + d);
    if (pairs.empty())
        throw std::invalid_argument("itti_saliency: image too small for any center-surround pair");
    const int out_level = std::min(params.output_level, levels - 1);

    // intensity and color-opponency channels
    FloatMap intensity(w, h);
    for (std::size_t i = 0; i < intensity.size(); ++i)
        intensity.data()[i] = (image.r.data()[i] + image.g.data()[i] + image.b.data()[i]) / 3.0;
    const double max_i = *std::max_element(intensity.data().begin(), intensity.data().end());

    FloatMap rg(w, h), by(w, h);
    if (max_i > 0.0) {
        const double cutoff = max_i / 10.0;  // hue is unreliable at low luminance
        for (std::size_t i = 0; i < rg.size(); ++i) {
            const double li = intensity.data()[i];
            if (li < cutoff) continue;
            const double r = image.r.data()[i] / li, g = image.g.data()[i] / li, b = image.b.data()[i] / li;
            const double rr = std::max(0.0, r - (g + b) / 2.0);
            const double gg = std::max(0.0, g - (r + b) / 2.0);
            const double bb = std::max(0.0, b - (r + g) / 2.0);
            const double yy = std::max(0.0, (r + g) / 2.0 - std::fabs(r - g) / 2.0 - b);
            rg.data()[i] = rr - gg;
            by.data()[i] = bb - yy;
        }
    }

    const std::vector<FloatMap> pyr_i = gaussian_pyramid(intensity, levels);
    const std::vector<FloatMap> pyr_rg = gaussian_pyramid(rg, levels);
    const std::vector<FloatMap> pyr_by = gaussian_pyramid(by, levels);

    const int ow = pyr_i[out_level].width(), oh = pyr_i[out_level].height();
    const auto at_output = [&](const FloatMap& m) { return resize_bilinear(m, ow, oh); };

    FloatMap consp_i(ow, oh), consp_c(ow, oh);
    for (const auto& [c, s] : pairs) {
        accumulate(consp_i, detail::normalize_peaks(at_output(abs_difference(pyr_i[c], pyr_i[s]))));
        accumulate(consp_c, detail::normalize_peaks(at_output(abs_difference(pyr_rg[c], pyr_rg[s]))));
        accumulate(consp_c, detail::normalize_peaks(at_output(abs_difference(pyr_by[c], pyr_by[s]))));
    }

    FloatMap consp_o(ow, oh);
    for (int t = 0; t < params.orientation_count; ++t) {
        const double theta = kPi * t / params.orientation_count;
        const std::vector<double> kernel = oriented_kernel(theta);
        std::vector<FloatMap> pyr_o;
        pyr_o.reserve(levels);
        for (const FloatMap& level : pyr_i) pyr_o.push_back(convolve_abs(level, kernel, 4));
        FloatMap per_theta(ow, oh);
        for (const auto& [c, s] : pairs)
            accumulate(per_theta, detail::normalize_peaks(at_output(abs_difference(pyr_o[c], pyr_o[s]))));
        accumulate(consp_o, detail::normalize_peaks(per_theta));
    }

    FloatMap final_map(ow, oh);
    accumulate(final_map, detail::normalize_peaks(consp_i));
    accumulate(final_map, detail::normalize_peaks(consp_c));
    accumulate(final_map, detail::normalize_peaks(consp_o));
    for (double& v : final_map.data()) v /= 3.0;

    return normalize01_gated(resize_bilinear(final_map, w, h));
}

namespace detail {

// Direct orthonormal DCT, separable; working sizes are small enough that
// the O(n^2) per-axis transform is cheap.
namespace {

void dct_axis(const std::vector<double>& in, std::vector<double>& out, int n, int stride, int count,
              bool inverse) {
    std::vector<double> basis(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
        for (int i = 0; i < n; ++i)
            basis[static_cast<std::size_t>(k) * n + i] = scale * std::cos(kPi * (i + 0.5) * k / n);
    }
    for (int line = 0; line < count; ++line) {
        const std::size_t base = (stride == 1) ? static_cast<std::size_t>(line) * n : static_cast<std::size_t>(line);
        for (int k = 0; k < n; ++k) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                const double b = inverse ? basis[static_cast<std::size_t>(i) * n + k]
                                         : basis[static_cast<std::size_t>(k) * n + i];
                acc += b * in[base + static_cast<std::size_t>(i) * stride];
            }
            out[base + static_cast<std::size_t>(k) * stride] = acc;
        }
    }
}

std::vector<double> transform2(const std::vector<double>& values, int width, int height, bool inverse) {
    std::vector<double> tmp(values.size()), out(values.size());
    dct_axis(values, tmp, width, 1, height, inverse);   // rows
    dct_axis(tmp, out, height, width, width, inverse);  // columns
    return out;
}

}  // namespace

std::vector<double> dct2(const std::vector<double>& values, int width, int height) {
    return transform2(values, width, height, false);
}

std::vector<double> idct2(const std::vector<double>& coeffs, int width, int height) {
    return transform2(coeffs, width, height, true);
}

}  // namespace detail

void SigParams::validate() const {
    if (working_width < 16 || working_height < 16)
        throw std::invalid_argument("SigParams: working size must be >= 16 in each dimension");
    if (!(blur_sigma > 0.0)) throw std::invalid_argument("SigParams: blur_sigma must be > 0");
}

namespace {

void signature_channel(const FloatMap& channel, const SigParams& params, FloatMap& into) {
    const FloatMap small = resize_bilinear(channel, params.working_width, params.working_height);
    std::vector<double> values(small.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = small.data()[i];
    std::vector<double> coeffs = detail::dct2(values, small.width(), small.height());
    // sign(0) = 0; transform round-off must not promote an exact zero to +-1
    double peak = 0.0;
    for (const double c : coeffs) peak = std::max(peak, std::fabs(c));
    const double eps = peak * 1e-12;
    for (double& c : coeffs) c = c > eps ? 1.0 : (c < -eps ? -1.0 : 0.0);
    const std::vector<double> recon = detail::idct2(coeffs, small.width(), small.height());
    for (std::size_t i = 0; i < recon.size(); ++i)
        into.data()[i] += recon[i] * recon[i];
}

FloatMap signature_finish(FloatMap accum, const SigParams& params, int out_w, int out_h) {
    return normalize01_gated(resize_bilinear(gaussian_blur(accum, params.blur_sigma), out_w, out_h));
}

}  // namespace

FloatMap signature_saliency(const GrayImage& image, const SigParams& params) {
    params.validate();
    FloatMap accum(params.working_width, params.working_height);
    signature_channel(image, params, accum);
    return signature_finish(std::move(accum), params, image.width(), image.height());
}

FloatMap signature_saliency(const ColorImage& image, const SigParams& params) {
    params.validate();
    FloatMap accum(params.working_width, params.working_height);
    signature_channel(image.r, params, accum);
    signature_channel(image.g, params, accum);
    signature_channel(image.b, params, accum);
    return signature_finish(std::move(accum), params, image.width(), image.height());
}

FloatMap combine(const FloatMap& bottom_up, const FloatMap& prior) {
    if (!bottom_up.same_size(prior.width(), prior.height()))
        throw std::invalid_argument("combine: dimension mismatch");
    for (std::size_t i = 0; i < bottom_up.size(); ++i)
        if (bottom_up.data()[i] < 0.0 || prior.data()[i] < 0.0)
            throw std::invalid_argument("combine: maps must be non-negative");
    FloatMap out(bottom_up.width(), bottom_up.height());
    for (std::size_t i = 0; i < out.size(); ++i)
        out.data()[i] = bottom_up.data()[i] * prior.data()[i];
    return normalize01(out);
}

}  // namespace ldsal
