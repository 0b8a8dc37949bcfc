#ifndef LDSAL_CLOSURE_HPP
#define LDSAL_CLOSURE_HPP

#include <vector>

#include "ldsal/raster.hpp"

namespace ldsal {

struct ClosureParams {
    int directions = 8;         // compass fan; 4 and 8 are supported
    double max_ray_length = 0;  // pixels (Euclidean); 0 means the image diagonal
    int stride = 1;             // subsampling step for map computation

    void validate() const;
    double effective_max_ray(int width, int height) const;
};

/// Outcome of casting the directional rays from one pixel: how many
/// directions met a contour pixel and at which Euclidean distances.
struct RayScan {
    int n_hits = 0;
    std::vector<double> radii;  // one entry per hit direction, in cast order
};

/// Cast rays from (x, y) (start pixel excluded) along the compass
/// directions, one pixel per move. A ray that leaves the image or
/// exceeds max_ray_length is a miss.
RayScan ray_scan(const ContourMask& contour, int x, int y, const ClosureParams& params);

/// Enclosure score of one scan: exp(n_hits - directions) divided by the
/// mean plus population standard deviation of the hit radii; 0 when no
/// direction hit.
double closure_degree(const RayScan& scan, int directions);

/// Per-pixel closure degree at stride spacing, bilinear fill between
/// strides. An empty contour yields the all-zero map.
FloatMap closure_map(const ContourMask& contour, const ClosureParams& params);

}  // namespace ldsal

#endif
