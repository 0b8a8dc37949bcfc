#include "ldsal/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ldsal/errors.hpp"
#include "ldsal/linalg2.hpp"

namespace ldsal {

const char* const kShapeFeatureNames[kShapeFeatureCount] = {
    "area_ratio", "centralization", "perimeter_ratio", "axis_ratio",  "eccentricity",
    "orientation", "equiv_diameter", "solidity",        "extent",     "closure_score"};

double shape_feature(const ShapeFeatureVector& v, int index) {
    switch (index) {
        case 0: return v.area_ratio;
        case 1: return v.centralization;
        case 2: return v.perimeter_ratio;
        case 3: return v.axis_ratio;
        case 4: return v.eccentricity;
        case 5: return v.orientation;
        case 6: return v.equiv_diameter;
        case 7: return v.solidity;
        case 8: return v.extent;
        case 9: return v.closure_score;
        default: throw std::invalid_argument("shape_feature: bad index");
    }
}

void DensityParams::validate() const {
    if (!(sigma > 0.0)) throw std::invalid_argument("DensityParams: sigma must be > 0");
}

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

std::pair<int, int> bin_fixation(const FixationRecord& rec) {
    return {static_cast<int>(std::floor(rec.x)), static_cast<int>(std::floor(rec.y))};
}

struct MomentStats {
    double mean_f = 0.0, mean_g = 0.0, var_f = 0.0, var_g = 0.0, cov = 0.0;
};

MomentStats moments(const FloatMap& f, const FloatMap& g) {
    const std::size_t n = f.size();
    double sf = 0.0, sg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sf += f.data()[i];
        sg += g.data()[i];
    }
    MomentStats s;
    s.mean_f = sf / n;
    s.mean_g = sg / n;
    for (std::size_t i = 0; i < n; ++i) {
        const double df = f.data()[i] - s.mean_f;
        const double dg = g.data()[i] - s.mean_g;
        s.var_f += df * df;
        s.var_g += dg * dg;
        s.cov += df * dg;
    }
    s.var_f /= n;
    s.var_g /= n;
    s.cov /= n;
    return s;
}

}  // namespace

FloatMap density_map(const FixationSet& fixations, int width, int height, const DensityParams& params,
                     bool* empty) {
    params.validate();
    validate_fixations(fixations, width, height);
    const std::vector<FixationRecord> kept = retained_fixations(fixations, params.drop_first_fixation);
    if (empty) *empty = kept.empty();
    FloatMap impulses(width, height);
    if (kept.empty()) return impulses;
    for (const FixationRecord& rec : kept) {
        const auto [x, y] = bin_fixation(rec);
        impulses(x, y) += 1.0;
    }
    return gaussian_blur(impulses, params.sigma);
}

double cc(const FloatMap& f, const FloatMap& g) {
    if (!f.same_size(g.width(), g.height())) throw std::invalid_argument("cc: dimension mismatch");
    const MomentStats s = moments(f, g);
    if (s.var_f <= 0.0 || s.var_g <= 0.0)
        throw UndefinedValueError("cc: correlation undefined for a constant map");
    return s.cov / (std::sqrt(s.var_f) * std::sqrt(s.var_g));
}

double mae(const FloatMap& f, const FloatMap& g) {
    if (!f.same_size(g.width(), g.height())) throw std::invalid_argument("mae: dimension mismatch");
    const auto in_unit = [](const FloatMap& m) {
        const auto [mn, mx] = std::minmax_element(m.data().begin(), m.data().end());
        return *mn >= 0.0 && *mx <= 1.0;
    };
    const FloatMap& fn = in_unit(f) ? f : normalize01(f);
    const FloatMap& gn = in_unit(g) ? g : normalize01(g);
    double sum = 0.0;
    for (std::size_t i = 0; i < fn.size(); ++i)
        sum += std::fabs(static_cast<double>(fn.data()[i]) - static_cast<double>(gn.data()[i]));
    return sum / fn.size();
}

std::vector<SegmentSaliency> segment_saliency(const LabelMap& labels, const FixationSet& fixations,
                                              const DensityParams& params) {
    validate_fixations(fixations, labels.width(), labels.height());
    int n_segments = 0;
    for (const std::int32_t v : labels.data()) n_segments = std::max(n_segments, v + 1);

    std::vector<SegmentSaliency> out(n_segments);
    for (int s = 0; s < n_segments; ++s) out[s].segment_id = s;
    for (const std::int32_t v : labels.data()) ++out[v].area;

    for (const FixationRecord& rec : retained_fixations(fixations, params.drop_first_fixation)) {
        const auto [x, y] = bin_fixation(rec);
        ++out[labels(x, y)].fixation_count;
    }

    double max_density = 0.0;
    for (SegmentSaliency& s : out) {
        s.density = s.area > 0 ? static_cast<double>(s.fixation_count) / s.area : 0.0;
        max_density = std::max(max_density, s.density);
    }
    if (max_density > 0.0)
        for (SegmentSaliency& s : out) s.saliency_score = s.density / max_density;
    return out;
}

FloatMap segment_score_map(const LabelMap& labels, const std::vector<SegmentSaliency>& scores) {
    std::vector<double> by_id(scores.size(), 0.0);
    for (const SegmentSaliency& s : scores) {
        if (s.segment_id < 0 || s.segment_id >= static_cast<int>(by_id.size()))
            throw std::invalid_argument("segment_score_map: segment id out of range");
        by_id[s.segment_id] = s.saliency_score;
    }
    FloatMap out(labels.width(), labels.height());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::int32_t v = labels.data()[i];
        if (v < 0 || v >= static_cast<int>(by_id.size()))
            throw std::invalid_argument("segment_score_map: label outside score table");
        out.data()[i] = by_id[v];
    }
    return out;
}

FloatMap hierarchical_objects(const FloatMap& map_a, const FloatMap& map_b) {
    if (!map_a.same_size(map_b.width(), map_b.height()))
        throw std::invalid_argument("hierarchical_objects: dimension mismatch");
    FloatMap sum(map_a.width(), map_a.height());
    for (std::size_t i = 0; i < sum.size(); ++i)
        sum.data()[i] = map_a.data()[i] + map_b.data()[i];
    return normalize01(sum);
}

namespace {

struct BoundaryCounts {
    long long nr = 0;  // boundary pixels
    long long nb = 0;  // boundary pixels on the image border
    long long exposed_faces = 0;  // 4-neighbor faces adjacent to another label or the border
};

BoundaryCounts boundary_counts(const LabelMap& labels, int segment_id) {
    const int w = labels.width(), h = labels.height();
    BoundaryCounts counts;
    bool found = false;
    constexpr int dx[4] = {1, -1, 0, 0};
    constexpr int dy[4] = {0, 0, 1, -1};
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (labels(x, y) != segment_id) continue;
            found = true;
            bool boundary = false;
            for (int k = 0; k < 4; ++k) {
                const int nx = x + dx[k], ny = y + dy[k];
                if (!labels.in_bounds(nx, ny) || labels(nx, ny) != segment_id) {
                    boundary = true;
                    ++counts.exposed_faces;
                }
            }
            if (boundary) {
                ++counts.nr;
                if (x == 0 || y == 0 || x == w - 1 || y == h - 1) ++counts.nb;
            }
        }
    if (!found) throw std::invalid_argument("unknown segment id " + std::to_string(segment_id));
    return counts;
}

}  // namespace

double closure_score(const LabelMap& labels, int segment_id) {
    const BoundaryCounts counts = boundary_counts(labels, segment_id);
    // any non-empty segment has at least one exposed pixel, so NR > 0
    return 1.0 - static_cast<double>(counts.nb) / static_cast<double>(counts.nr);
}

ClosedRegionSet closed_regions(const LabelMap& labels, double threshold) {
    int n_segments = 0;
    for (const std::int32_t v : labels.data()) n_segments = std::max(n_segments, v + 1);
    ClosedRegionSet set;
    set.pixels = ContourMask(labels.width(), labels.height());
    std::vector<bool> member(n_segments, false);
    for (int s = 0; s < n_segments; ++s)
        if (closure_score(labels, s) > threshold) {
            member[s] = true;
            set.member_segments.push_back(s);
        }
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (member[labels.data()[i]]) set.pixels.data()[i] = 1;
    return set;
}

GuidanceMetrics guidance_metrics(const FixationSet& fixations, const ContourMask& contours,
                                 const ClosedRegionSet& closed, int n, const DensityParams& params) {
    const int w = contours.width(), h = contours.height();
    if (!closed.pixels.same_size(w, h))
        throw std::invalid_argument("guidance_metrics: dimension mismatch");
    validate_fixations(fixations, w, h);

    const std::vector<FixationRecord> kept = retained_fixations(fixations, params.drop_first_fixation);
    if (kept.empty())
        throw UndefinedValueError("guidance_metrics: no fixations retained, PoF/PoFC undefined");
    long long contour_pixels = 0;
    for (const std::uint8_t b : contours.data()) contour_pixels += b;
    if (contour_pixels == 0)
        throw UndefinedValueError("guidance_metrics: no contour pixels, PoC undefined");

    ContourMask fix_pixels(w, h);
    for (const FixationRecord& rec : kept) {
        const auto [x, y] = bin_fixation(rec);
        fix_pixels(x, y) = 1;
    }

    const ContourMask contours_n = dilate(contours, n);
    const ContourMask fixations_n = dilate(fix_pixels, n);
    const ContourMask closed_n = dilate(closed.pixels, n);

    long long fix_on_contour = 0, fix_on_closed = 0;
    for (const FixationRecord& rec : kept) {  // multiset: duplicates count
        const auto [x, y] = bin_fixation(rec);
        if (contours_n(x, y)) ++fix_on_contour;
        if (closed_n(x, y)) ++fix_on_closed;
    }
    long long contour_near_fix = 0, closed_area = 0;
    for (std::size_t i = 0; i < contours.size(); ++i) {
        if (contours.data()[i] && fixations_n.data()[i]) ++contour_near_fix;
        closed_area += closed_n.data()[i];
    }

    GuidanceMetrics m;
    m.pof = static_cast<double>(fix_on_contour) / static_cast<double>(kept.size());
    m.poc = static_cast<double>(contour_near_fix) / static_cast<double>(contour_pixels);
    m.pofc = static_cast<double>(fix_on_closed) / static_cast<double>(kept.size());
    m.pocc = static_cast<double>(closed_area) / (static_cast<double>(w) * h);
    return m;
}

ShapeFeatureVector shape_features(const LabelMap& labels, int segment_id) {
    const int w = labels.width(), h = labels.height();
    long long area = 0;
    long long min_x = w, max_x = -1, min_y = h, max_y = -1;
    double sum_x = 0.0, sum_y = 0.0, dist_sum = 0.0;
    const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (labels(x, y) != segment_id) continue;
            ++area;
            sum_x += x;
            sum_y += y;
            dist_sum += std::hypot(x - cx, y - cy);
            min_x = std::min<long long>(min_x, x);
            max_x = std::max<long long>(max_x, x);
            min_y = std::min<long long>(min_y, y);
            max_y = std::max<long long>(max_y, y);
        }
    if (area == 0) throw std::invalid_argument("unknown segment id " + std::to_string(segment_id));

    const double mean_x = sum_x / area, mean_y = sum_y / area;
    // second central moments with the unit-pixel correction, so that a
    // w x h pixel rectangle measures exactly (w^2/12, h^2/12)
    Sym2 mu;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (labels(x, y) != segment_id) continue;
            const double dx = x - mean_x, dy = y - mean_y;
            mu.xx += dx * dx;
            mu.xy += dx * dy;
            mu.yy += dy * dy;
        }
    mu.xx = mu.xx / area + 1.0 / 12.0;
    mu.yy = mu.yy / area + 1.0 / 12.0;
    mu.xy /= area;
    const Eig2 eig = eig_sym2(mu);

    const BoundaryCounts counts = boundary_counts(labels, segment_id);

    ShapeFeatureVector v;
    v.area_ratio = static_cast<double>(area) / (static_cast<double>(w) * h);
    v.centralization = dist_sum / area / (std::hypot(static_cast<double>(w - 1), static_cast<double>(h - 1)) / 2.0);
    v.perimeter_ratio = static_cast<double>(counts.exposed_faces) / (2.0 * (w + h));
    v.axis_ratio = std::sqrt(std::max(0.0, eig.lambda_min) / eig.lambda_max);
    v.eccentricity = std::sqrt(std::max(0.0, 1.0 - eig.lambda_min / eig.lambda_max));
    double theta = std::atan2(eig.vy, eig.vx);  // fold the axis direction into (-pi/2, pi/2]
    if (theta > kHalfPi) theta -= kPi;
    else if (theta <= -kHalfPi) theta += kPi;
    v.orientation = theta;
    v.equiv_diameter = std::sqrt(4.0 * area / kPi) /
                       std::hypot(static_cast<double>(w), static_cast<double>(h));

    // convex hull over the corners of the boundary pixels (monotone chain)
    std::vector<std::pair<long long, long long>> corners;
    constexpr int dx4[4] = {1, -1, 0, 0};
    constexpr int dy4[4] = {0, 0, 1, -1};
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (labels(x, y) != segment_id) continue;
            bool boundary = false;
            for (int k = 0; k < 4 && !boundary; ++k) {
                const int nx = x + dx4[k], ny = y + dy4[k];
                if (!labels.in_bounds(nx, ny) || labels(nx, ny) != segment_id) boundary = true;
            }
            if (boundary)
                for (int cyi = 0; cyi <= 1; ++cyi)
                    for (int cxi = 0; cxi <= 1; ++cxi) corners.emplace_back(x + cxi, y + cyi);
        }
    std::sort(corners.begin(), corners.end());
    corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
    const auto cross = [](const std::pair<long long, long long>& o, const std::pair<long long, long long>& a,
                          const std::pair<long long, long long>& b) {
        return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<long long, long long>> hull;
    if (corners.size() >= 3) {
        hull.resize(2 * corners.size());
        std::size_t k = 0;
        for (const auto& p : corners) {
            while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
            hull[k++] = p;
        }
        const std::size_t lower = k + 1;
        for (auto it = corners.rbegin() + 1; it != corners.rend(); ++it) {
            while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
            hull[k++] = *it;
        }
        hull.resize(k - 1);
    }
    double hull_area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        hull_area += static_cast<double>(a.first) * b.second - static_cast<double>(b.first) * a.second;
    }
    hull_area = std::fabs(hull_area) / 2.0;
    v.solidity = hull_area > 0.0 ? std::min(1.0, area / hull_area) : 1.0;

    const double bbox = static_cast<double>(max_x - min_x + 1) * static_cast<double>(max_y - min_y + 1);
    v.extent = area / bbox;
    v.closure_score = 1.0 - static_cast<double>(counts.nb) / static_cast<double>(counts.nr);
    return v;
}

std::vector<FeatureCorrelation> feature_correlation(const std::vector<ShapeFeatureVector>& features,
                                                    const std::vector<double>& scores) {
    if (features.size() != scores.size())
        throw std::invalid_argument("feature_correlation: list sizes differ");
    if (features.size() < 3)
        throw std::invalid_argument("feature_correlation: need at least 3 segments");
    const std::size_t n = features.size();
    std::vector<double> log_s(n);
    for (std::size_t i = 0; i < n; ++i) log_s[i] = std::log(scores[i] + 1e-6);

    double mean_s = 0.0;
    for (const double v : log_s) mean_s += v;
    mean_s /= n;
    double var_s = 0.0;
    for (const double v : log_s) var_s += (v - mean_s) * (v - mean_s);

    std::vector<FeatureCorrelation> out(kShapeFeatureCount);
    for (int k = 0; k < kShapeFeatureCount; ++k) {
        double mean_f = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean_f += shape_feature(features[i], k);
        mean_f /= n;
        double var_f = 0.0, cov = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double df = shape_feature(features[i], k) - mean_f;
            var_f += df * df;
            cov += df * (log_s[i] - mean_s);
        }
        if (var_f <= 0.0 || var_s <= 0.0) {
            out[k].degenerate = true;
            out[k].r = 0.0;
        } else {
            out[k].r = cov / std::sqrt(var_f * var_s);
        }
    }
    return out;
}

}  // namespace ldsal
