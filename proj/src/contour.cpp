#include "ldsal/contour.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldsal {

void EdgeParams::validate() const {
    if (!(low_threshold > 0.0 && low_threshold < high_threshold && high_threshold <= 1.0))
        throw std::invalid_argument("EdgeParams: need 0 < low < high <= 1");
    if (min_chain_length < 2) throw std::invalid_argument("EdgeParams: min_chain_length must be >= 2");
}

namespace {

// neighbor order used by the tracer; E, SE, S, SW, W, NW, N, NE
constexpr int kNbrX[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kNbrY[8] = {0, 1, 1, 1, 0, -1, -1, -1};

double percentile99(std::vector<double> values) {
    // nearest-rank
    const std::size_t rank = static_cast<std::size_t>(std::ceil(0.99 * values.size()));
    const std::size_t idx = rank == 0 ? 0 : rank - 1;
    std::nth_element(values.begin(), values.begin() + idx, values.end());
    return values[idx];
}

}  // namespace

FloatMap detect_edges(const GrayImage& image, const EdgeParams& params) {
    params.validate();
    const int w = image.width(), h = image.height();

    FloatMap mag(w, h);
    Grid<std::uint8_t> dir(w, h);  // gradient direction quantized to 4 bins
    const auto px = [&](int x, int y) -> double {
        return image(reflect_index(x, w), reflect_index(y, h));
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gx = (px(x + 1, y - 1) + 2.0 * px(x + 1, y) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2.0 * px(x - 1, y) + px(x - 1, y + 1));
            const double gy = (px(x - 1, y + 1) + 2.0 * px(x, y + 1) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2.0 * px(x, y - 1) + px(x + 1, y - 1));
            mag(x, y) = std::hypot(gx, gy);
            // bins: 0 = horizontal gradient, 1 = 45 deg, 2 = vertical, 3 = 135 deg
            double angle = std::atan2(gy, gx);
            if (angle < 0.0) angle += 3.14159265358979323846;
            dir(x, y) = static_cast<std::uint8_t>(static_cast<int>(std::floor(angle / (3.14159265358979323846 / 4.0) + 0.5)) % 4);
        }
    }

    const double p99 = percentile99(mag.data());
    if (p99 <= 0.0) return FloatMap(w, h);  // flat image, no edges
    const double high = params.high_threshold * p99;
    const double low = params.low_threshold * p99;

    // NMS along the gradient; ties broken toward the positive direction so
    // a two-pixel plateau keeps exactly one pixel.
    static const int step_x[4] = {1, 1, 0, -1};
    static const int step_y[4] = {0, 1, 1, 1};
    FloatMap thin(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double m = mag(x, y);
            if (m <= 0.0) continue;
            const int d = dir(x, y);
            const int xp = x + step_x[d], yp = y + step_y[d];
            const int xm = x - step_x[d], ym = y - step_y[d];
            const double next = mag.in_bounds(xp, yp) ? mag(xp, yp) : 0.0;
            const double prev = mag.in_bounds(xm, ym) ? mag(xm, ym) : 0.0;
            if (m > next && m >= prev) thin(x, y) = m;
        }
    }

    // hysteresis: grow 8-connected from strong pixels through weak ones
    Grid<std::uint8_t> keep(w, h);
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (thin(x, y) >= high) {
                keep(x, y) = 1;
                stack.emplace_back(x, y);
            }
    while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        for (int k = 0; k < 8; ++k) {
            const int nx = x + kNbrX[k], ny = y + kNbrY[k];
            if (!thin.in_bounds(nx, ny) || keep(nx, ny)) continue;
            if (thin(nx, ny) >= low) {
                keep(nx, ny) = 1;
                stack.emplace_back(nx, ny);
            }
        }
    }

    FloatMap out(w, h);
    double peak = 0.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (keep(x, y)) peak = std::max(peak, thin(x, y));
    if (peak <= 0.0) return out;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (keep(x, y)) out(x, y) = thin(x, y) / peak;
    return out;
}

namespace {

struct Tracer {
    const ContourMask& mask;
    Grid<std::uint8_t> degree;    // raw 8-neighbor count on the full mask
    Grid<std::uint8_t> branches;  // connected neighbor groups; >= 3 marks a junction
    Grid<std::uint8_t> visited;

    explicit Tracer(const ContourMask& m)
        : mask(m), degree(m.width(), m.height()), branches(m.width(), m.height()),
          visited(m.width(), m.height()) {
        for (int y = 0; y < m.height(); ++y)
            for (int x = 0; x < m.width(); ++x) {
                if (!m(x, y)) continue;
                bool on[8];
                int d = 0;
                for (int k = 0; k < 8; ++k) {
                    const int nx = x + kNbrX[k], ny = y + kNbrY[k];
                    on[k] = m.in_bounds(nx, ny) && m(nx, ny);
                    d += on[k] ? 1 : 0;
                }
                degree(x, y) = static_cast<std::uint8_t>(d);
                // group mutually 8-adjacent neighbors so that a thick corner
                // (two neighbors touching each other) counts as one branch
                int groups = 0;
                bool seen[8] = {};
                for (int k = 0; k < 8; ++k) {
                    if (!on[k] || seen[k]) continue;
                    ++groups;
                    int stack[8], top = 0;
                    stack[top++] = k;
                    seen[k] = true;
                    while (top > 0) {
                        const int cur = stack[--top];
                        for (int j = 0; j < 8; ++j) {
                            if (!on[j] || seen[j]) continue;
                            if (std::abs(kNbrX[cur] - kNbrX[j]) <= 1 &&
                                std::abs(kNbrY[cur] - kNbrY[j]) <= 1) {
                                seen[j] = true;
                                stack[top++] = j;
                            }
                        }
                    }
                }
                branches(x, y) = static_cast<std::uint8_t>(groups);
            }
    }

    bool junction(int x, int y) const { return branches(x, y) >= 3; }

    // Walk from (x, y), claiming pixels. A trace stops after appending a
    // junction pixel unless that pixel is the chain's first, so branches
    // partition the mask.
    EdgeChain trace(int x, int y) {
        EdgeChain chain;
        chain.points.emplace_back(x, y);
        visited(x, y) = 1;
        while (true) {
            const auto [cx, cy] = chain.points.back();
            if (chain.points.size() > 1 && junction(cx, cy)) break;
            int next = -1;
            for (int k = 0; k < 8; ++k) {
                const int nx = cx + kNbrX[k], ny = cy + kNbrY[k];
                if (mask.in_bounds(nx, ny) && mask(nx, ny) && !visited(nx, ny)) {
                    next = k;
                    break;
                }
            }
            if (next < 0) break;
            const int nx = cx + kNbrX[next], ny = cy + kNbrY[next];
            chain.points.emplace_back(nx, ny);
            visited(nx, ny) = 1;
        }
        const auto [fx, fy] = chain.points.front();
        const auto [lx, ly] = chain.points.back();
        chain.closed = chain.points.size() >= 3 &&
                       std::abs(fx - lx) <= 1 && std::abs(fy - ly) <= 1;
        return chain;
    }
};

}  // namespace

LinkResult link_edges(const ContourMask& edges, int min_chain_length) {
    if (min_chain_length < 2) throw std::invalid_argument("link_edges: min_chain_length must be >= 2");
    const int w = edges.width(), h = edges.height();
    Tracer tracer(edges);
    std::vector<EdgeChain> all;

    // endpoints first, then whatever is left (cycles and junction clusters)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (edges(x, y) && !tracer.visited(x, y) && tracer.degree(x, y) == 1)
                all.push_back(tracer.trace(x, y));
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (edges(x, y) && !tracer.visited(x, y))
                all.push_back(tracer.trace(x, y));

    LinkResult result;
    result.mask = ContourMask(w, h);
    for (EdgeChain& chain : all) {
        if (static_cast<int>(chain.points.size()) < min_chain_length) continue;
        for (const auto& [x, y] : chain.points) result.mask(x, y) = 1;
        result.chains.push_back(std::move(chain));
    }
    return result;
}

LinkResult link_edges(const FloatMap& edges, int min_chain_length) {
    ContourMask mask(edges.width(), edges.height());
    for (std::size_t i = 0; i < edges.size(); ++i)
        mask.data()[i] = edges.data()[i] > 0.0 ? 1 : 0;
    return link_edges(mask, min_chain_length);
}

}  // namespace ldsal
