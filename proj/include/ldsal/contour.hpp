#ifndef LDSAL_CONTOUR_HPP
#define LDSAL_CONTOUR_HPP

#include <utility>
#include <vector>

#include "ldsal/raster.hpp"

namespace ldsal {

/// An 8-connected run of contour pixels, traced in order.
struct EdgeChain {
    std::vector<std::pair<int, int>> points;  // (x, y)
    bool closed = false;
};

struct EdgeParams {
    double high_threshold = 0.2;  // fraction of the 99th-percentile magnitude
    double low_threshold = 0.08;
    int min_chain_length = 10;  // pixels, at 1024x768 scale

    void validate() const;
};

/// Gradient-magnitude edge map: 3x3 Sobel, non-maximum suppression along
/// the gradient direction, hysteresis linking between the low and high
/// thresholds. Output is in [0,1] (max-scaled magnitude on surviving
/// pixels) and zero off-edge.
FloatMap detect_edges(const GrayImage& image, const EdgeParams& params);

struct LinkResult {
    std::vector<EdgeChain> chains;
    ContourMask mask;  // exactly the surviving chains' pixels
};

/// Trace 8-connected chains (endpoints first, then cycles; traces stop on
/// arrival at a junction pixel with >= 3 distinct branch directions) and
/// discard chains shorter than min_chain_length.
LinkResult link_edges(const ContourMask& edges, int min_chain_length);

/// Same, binarizing a real-valued edge map at > 0.
LinkResult link_edges(const FloatMap& edges, int min_chain_length);

}  // namespace ldsal

#endif
