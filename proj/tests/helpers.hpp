#ifndef LDSAL_TESTS_HELPERS_HPP
#define LDSAL_TESTS_HELPERS_HPP

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ldsal/fixation.hpp"
#include "ldsal/raster.hpp"

namespace ldsal::testing {

/// Thin ring: pixels whose distance to the center is within 0.75 px of
/// the radius. The band is kept a little wider than sqrt(2)/2 so that
/// diagonal lattice rays (step sqrt(2)) cannot step across it.
inline ContourMask make_ring(int width, int height, double cx, double cy, double radius) {
    ContourMask mask(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (std::fabs(std::hypot(x - cx, y - cy) - radius) <= 0.75) mask(x, y) = 1;
    return mask;
}

/// Ring with gaps cut where the listed compass rays (E,NE,N,NW,W,SW,S,SE
/// order) from the center would cross it of a half-width of `gap` pixels.
inline ContourMask make_broken_ring(int width, int height, double cx, double cy, double radius,
                                    const std::vector<int>& broken_dirs, double gap = 2.0) {
    static const int dir_x[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static const int dir_y[8] = {0, -1, -1, -1, 0, 1, 1, 1};
    ContourMask mask = make_ring(width, height, cx, cy, radius);
    for (const int d : broken_dirs) {
        const double norm = std::hypot(static_cast<double>(dir_x[d]), static_cast<double>(dir_y[d]));
        const double px = cx + radius * dir_x[d] / norm;
        const double py = cy + radius * dir_y[d] / norm;
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x)
                if (std::hypot(x - px, y - py) <= gap) mask(x, y) = 0;
    }
    return mask;
}

inline ContourMask random_mask(int width, int height, double density, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    ContourMask mask(width, height);
    for (std::uint8_t& b : mask.data()) b = uni(rng) < density ? 1 : 0;
    return mask;
}

inline FixationSet make_fixations(const std::string& image_id,
                                  const std::vector<std::pair<double, double>>& points,
                                  const std::string& subject = "s1") {
    FixationSet set;
    set.image_id = image_id;
    int ordinal = 1;
    for (const auto& [x, y] : points)
        set.records.push_back({image_id, subject, ordinal++, x, y, 200.0});
    return set;
}

inline FloatMap constant_map(int width, int height, double value) {
    FloatMap map(width, height);
    for (double& v : map.data()) v = value;
    return map;
}

inline FloatMap random_map(int width, int height, unsigned seed, double lo = 0.0, double hi = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(lo, hi);
    FloatMap map(width, height);
    for (double& v : map.data()) v = uni(rng);
    return map;
}

}  // namespace ldsal::testing

#endif
