#ifndef LDSAL_TESTS_ORACLES_HPP
#define LDSAL_TESTS_ORACLES_HPP

#include <cmath>
#include <vector>

#include "ldsal/raster.hpp"

namespace ldsal::testing {

// Brute-force closure oracle, written independently of the library's ray
// caster: coordinates along each ray are recomputed from scratch per step
// instead of walked incrementally, and the scan is a plain quadruple loop
// with no early-outs beyond the ray contract itself. Directions are the
// canonical compass fan counterclockwise from east (y down).
inline double oracle_closure_value(const ContourMask& contour, int x, int y, int directions,
                                   double max_ray) {
    static const int dir_x[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static const int dir_y[8] = {0, -1, -1, -1, 0, 1, 1, 1};
    const int step = directions == 8 ? 1 : 2;

    int hits = 0;
    std::vector<double> radii;
    for (int d = 0; d < 8; d += step) {
        const bool diagonal = dir_x[d] != 0 && dir_y[d] != 0;
        const double unit = diagonal ? std::sqrt(2.0) : 1.0;
        for (int t = 1;; ++t) {
            const double dist = t * unit;
            if (dist > max_ray) break;
            const int px = x + t * dir_x[d];
            const int py = y + t * dir_y[d];
            if (px < 0 || py < 0 || px >= contour.width() || py >= contour.height()) break;
            if (contour(px, py)) {
                ++hits;
                radii.push_back(dist);
                break;
            }
        }
    }
    if (hits == 0) return 0.0;
    double sum = 0.0;
    for (const double r : radii) sum += r;
    const double mean = sum / hits;
    double sq = 0.0;
    for (const double r : radii) sq += (r - mean) * (r - mean);
    return std::exp(static_cast<double>(hits - directions)) / (mean + std::sqrt(sq / hits));
}

inline FloatMap oracle_closure_map(const ContourMask& contour, int directions, double max_ray) {
    FloatMap out(contour.width(), contour.height());
    bool any = false;
    for (const std::uint8_t b : contour.data()) any = any || b != 0;
    if (!any) return out;
    for (int y = 0; y < contour.height(); ++y)
        for (int x = 0; x < contour.width(); ++x)
            out(x, y) = oracle_closure_value(contour, x, y, directions, max_ray);
    return out;
}

// Window-scan dilation oracle (no separability trick).
inline ContourMask oracle_dilate(const ContourMask& mask, int n) {
    const int r = (n - 1) / 2;
    ContourMask out(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x) {
            std::uint8_t hit = 0;
            for (int dy = -r; dy <= r && !hit; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    if (mask.in_bounds(nx, ny) && mask(nx, ny)) {
                        hit = 1;
                        break;
                    }
                }
            out(x, y) = hit;
        }
    return out;
}

}  // namespace ldsal::testing

#endif
