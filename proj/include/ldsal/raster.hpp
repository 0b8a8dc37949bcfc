#ifndef LDSAL_RASTER_HPP
#define LDSAL_RASTER_HPP

#include <cassert>
#include <cstdint>
#include <vector>

namespace ldsal {

/// Row-major 2-D grid. The workhorse storage for every raster type.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height),
          data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
        assert(width >= 1 && height >= 1);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    T& operator()(int x, int y) {
        assert(in_bounds(x, y));
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    const T& operator()(int x, int y) const {
        assert(in_bounds(x, y));
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool same_size(int w, int h) const { return width_ == w && height_ == h; }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.data_ == b.data_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

/// Real-valued raster: saliency, closure, density and prior maps.
/// Values are kept at double precision in memory; the FMAP file format
/// serializes binary32.
using FloatMap = Grid<double>;

/// Grayscale image; values are luminance in [0,1]. Structurally a FloatMap,
/// the range invariant is enforced at the I/O boundary.
using GrayImage = FloatMap;

/// Binary raster of line-drawing pixels (0 or 1).
using ContourMask = Grid<std::uint8_t>;

/// Per-pixel segment identifiers, a contiguous range 0..S-1.
using LabelMap = Grid<std::int32_t>;

/// RGB image with planes in [0,1].
struct ColorImage {
    FloatMap r, g, b;

    ColorImage() = default;
    ColorImage(int width, int height)
        : r(width, height), g(width, height), b(width, height) {}

    int width() const { return r.width(); }
    int height() const { return r.height(); }
};

/// Affine rescale to [0,1]; a constant map becomes all zeros so that
/// downstream products vanish instead of turning into NaN.
FloatMap normalize01(const FloatMap& map);

/// Separable Gaussian blur, kernel truncated at radius ceil(3*sigma),
/// mirror (reflect) padding. sigma must be > 0.
FloatMap gaussian_blur(const FloatMap& map, double sigma);

/// Normalized 1-D Gaussian kernel as used by gaussian_blur (center at
/// index radius). Exposed so tests can check the separable construction.
std::vector<double> gaussian_kernel1d(double sigma);

/// Morphological dilation with an n x n square structuring element,
/// clipped at the image borders. n must be odd and >= 1.
ContourMask dilate(const ContourMask& mask, int n);

/// Bilinear resize. Pixel centers sit at integer coordinates; the
/// mapping is center-aligned. Used for pyramid level matching and for
/// bringing working-size maps back to input size.
FloatMap resize_bilinear(const FloatMap& map, int new_width, int new_height);

/// Reflect (mirror, border pixel not repeated) an index into [0, n).
int reflect_index(int i, int n);

}  // namespace ldsal

#endif
