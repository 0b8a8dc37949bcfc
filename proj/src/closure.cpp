#include "ldsal/closure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ldsal {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// compass fan, counterclockwise from east (y axis points down)
constexpr int kDirX[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDirY[8] = {0, -1, -1, -1, 0, 1, 1, 1};

}  // namespace

void ClosureParams::validate() const {
    if (directions != 4 && directions != 8)
        throw std::invalid_argument("ClosureParams: only the 4- and 8-direction compass fans are supported");
    if (max_ray_length < 0) throw std::invalid_argument("ClosureParams: max_ray_length must be >= 0");
    if (stride < 1) throw std::invalid_argument("ClosureParams: stride must be >= 1");
}

double ClosureParams::effective_max_ray(int width, int height) const {
    if (max_ray_length > 0) return max_ray_length;
    return std::hypot(static_cast<double>(width), static_cast<double>(height));
}

RayScan ray_scan(const ContourMask& contour, int x, int y, const ClosureParams& params) {
    params.validate();
    if (!contour.in_bounds(x, y)) throw std::invalid_argument("ray_scan: start pixel out of bounds");

    const double max_ray = params.effective_max_ray(contour.width(), contour.height());
    const int dir_step = params.directions == 8 ? 1 : 2;  // D=4 keeps the axis rays

    RayScan scan;
    for (int d = 0; d < 8; d += dir_step) {
        const int dx = kDirX[d], dy = kDirY[d];
        const double step_len = (dx != 0 && dy != 0) ? kSqrt2 : 1.0;
        int cx = x, cy = y;
        for (int step = 1;; ++step) {
            const double dist = step * step_len;
            if (dist > max_ray) break;
            cx += dx;
            cy += dy;
            if (!contour.in_bounds(cx, cy)) break;
            if (contour(cx, cy)) {
                ++scan.n_hits;
                scan.radii.push_back(dist);
                break;
            }
        }
    }
    return scan;
}

double closure_degree(const RayScan& scan, int directions) {
    if (scan.n_hits == 0) return 0.0;
    double sum = 0.0;
    for (const double r : scan.radii) sum += r;
    const double mean = sum / scan.n_hits;
    double sq = 0.0;
    for (const double r : scan.radii) sq += (r - mean) * (r - mean);
    const double sd = std::sqrt(sq / scan.n_hits);  // population form, defined for one hit
    return std::exp(static_cast<double>(scan.n_hits - directions)) / (mean + sd);
}

namespace {

void for_rows(int height, const std::function<void(int, int)>& body) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers <= 1 || height < 64) {
        body(0, height);
        return;
    }
    workers = std::min<unsigned>(workers, 16);
    std::vector<std::thread> pool;
    const int chunk = (height + static_cast<int>(workers) - 1) / static_cast<int>(workers);
    for (unsigned t = 0; t < workers; ++t) {
        const int y0 = static_cast<int>(t) * chunk;
        const int y1 = std::min(height, y0 + chunk);
        if (y0 >= y1) break;
        pool.emplace_back(body, y0, y1);
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace

FloatMap closure_map(const ContourMask& contour, const ClosureParams& params) {
    params.validate();
    const int w = contour.width(), h = contour.height();
    FloatMap out(w, h);
    if (std::none_of(contour.data().begin(), contour.data().end(), [](std::uint8_t b) { return b != 0; }))
        return out;

    if (params.stride == 1) {
        for_rows(h, [&](int y0, int y1) {
            for (int y = y0; y < y1; ++y)
                for (int x = 0; x < w; ++x)
                    out(x, y) = closure_degree(ray_scan(contour, x, y, params), params.directions);
        });
        return out;
    }

    // sample on the stride grid (last row/column always included), then
    // fill bilinearly between grid lines
    std::vector<int> xs, ys;
    for (int x = 0; x < w; x += params.stride) xs.push_back(x);
    if (xs.back() != w - 1) xs.push_back(w - 1);
    for (int y = 0; y < h; y += params.stride) ys.push_back(y);
    if (ys.back() != h - 1) ys.push_back(h - 1);

    FloatMap samples(static_cast<int>(xs.size()), static_cast<int>(ys.size()));
    for_rows(static_cast<int>(ys.size()), [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j)
            for (std::size_t i = 0; i < xs.size(); ++i)
                samples(static_cast<int>(i), j) =
                    closure_degree(ray_scan(contour, xs[i], ys[j], params), params.directions);
    });

    std::vector<int> xi(w), yi(h);  // index of the grid cell left/above each pixel
    for (int x = 0, i = 0; x < w; ++x) {
        while (i + 1 < static_cast<int>(xs.size()) && xs[i + 1] <= x) ++i;
        xi[x] = i;
    }
    for (int y = 0, j = 0; y < h; ++y) {
        while (j + 1 < static_cast<int>(ys.size()) && ys[j + 1] <= y) ++j;
        yi[y] = j;
    }
    for (int y = 0; y < h; ++y) {
        const int j = yi[y];
        const int j1 = std::min(j + 1, static_cast<int>(ys.size()) - 1);
        const double ty = ys[j1] == ys[j] ? 0.0 : static_cast<double>(y - ys[j]) / (ys[j1] - ys[j]);
        for (int x = 0; x < w; ++x) {
            const int i = xi[x];
            const int i1 = std::min(i + 1, static_cast<int>(xs.size()) - 1);
            const double tx = xs[i1] == xs[i] ? 0.0 : static_cast<double>(x - xs[i]) / (xs[i1] - xs[i]);
            const double top = samples(i, j) * (1.0 - tx) + samples(i1, j) * tx;
            const double bot = samples(i, j1) * (1.0 - tx) + samples(i1, j1) * tx;
            out(x, y) = top * (1.0 - ty) + bot * ty;
        }
    }
    return out;
}

}  // namespace ldsal
