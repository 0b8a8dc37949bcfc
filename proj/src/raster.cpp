#include "ldsal/raster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldsal {

FloatMap normalize01(const FloatMap& map) {
    const auto [mn_it, mx_it] = std::minmax_element(map.data().begin(), map.data().end());
    const double mn = *mn_it, mx = *mx_it;
    FloatMap out(map.width(), map.height());
    if (mx == mn) return out;  // constant map -> zeros
    const double range = mx - mn;
    for (std::size_t i = 0; i < map.size(); ++i)
        out.data()[i] = (map.data()[i] - mn) / range;  // endpoints land exactly on 0 and 1
    return out;
}

int reflect_index(int i, int n) {
    if (n == 1) return 0;
    // mirror without repeating the border pixel, period 2n-2
    const int p = 2 * n - 2;
    i = i % p;
    if (i < 0) i += p;
    return i < n ? i : p - i;
}

std::vector<double> gaussian_kernel1d(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_kernel1d: sigma must be > 0");
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;
    return k;
}

FloatMap gaussian_blur(const FloatMap& map, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_blur: sigma must be > 0");
    const std::vector<double> kernel = gaussian_kernel1d(sigma);
    const int radius = static_cast<int>(kernel.size() / 2);
    const int w = map.width(), h = map.height();

    // horizontal pass
    FloatMap tmp(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * map(reflect_index(x + i, w), y);
            tmp(x, y) = acc;
        }
    }
    // vertical pass
    FloatMap out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * tmp(x, reflect_index(y + i, h));
            out(x, y) = acc;
        }
    }
    return out;
}

ContourMask dilate(const ContourMask& mask, int n) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("dilate: n must be odd and >= 1");
    const int r = (n - 1) / 2;
    const int w = mask.width(), h = mask.height();
    if (r == 0) return mask;

    // square element separates into a horizontal and a vertical run
    ContourMask tmp(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t hit = 0;
            for (int i = std::max(0, x - r); i <= std::min(w - 1, x + r) && !hit; ++i)
                hit = mask(i, y);
            tmp(x, y) = hit;
        }
    }
    ContourMask out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t hit = 0;
            for (int j = std::max(0, y - r); j <= std::min(h - 1, y + r) && !hit; ++j)
                hit = tmp(x, j);
            out(x, y) = hit;
        }
    }
    return out;
}

FloatMap resize_bilinear(const FloatMap& map, int new_width, int new_height) {
    if (new_width < 1 || new_height < 1)
        throw std::invalid_argument("resize_bilinear: target dimensions must be positive");
    const int w = map.width(), h = map.height();
    if (w == new_width && h == new_height) return map;
    FloatMap out(new_width, new_height);
    const double sx = static_cast<double>(w) / new_width;
    const double sy = static_cast<double>(h) / new_height;
    for (int y = 0; y < new_height; ++y) {
        double fy = (y + 0.5) * sy - 0.5;
        fy = std::clamp(fy, 0.0, static_cast<double>(h - 1));
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, h - 1);
        const double ty = fy - y0;
        for (int x = 0; x < new_width; ++x) {
            double fx = (x + 0.5) * sx - 0.5;
            fx = std::clamp(fx, 0.0, static_cast<double>(w - 1));
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, w - 1);
            const double tx = fx - x0;
            const double top = map(x0, y0) * (1.0 - tx) + map(x1, y0) * tx;
            const double bot = map(x0, y1) * (1.0 - tx) + map(x1, y1) * tx;
            out(x, y) = top * (1.0 - ty) + bot * ty;
        }
    }
    return out;
}

}  // namespace ldsal
