#ifndef LDSAL_IMAGE_IO_HPP
#define LDSAL_IMAGE_IO_HPP

#include <string>
#include <variant>

#include "ldsal/raster.hpp"

namespace ldsal {

using PnmImage = std::variant<GrayImage, ColorImage>;

/// Read a binary PNM file (P5 gray / P6 color, maxval 255 or 65535,
/// 16-bit samples big-endian). Values are scaled by 1/maxval into [0,1].
/// Malformed input raises FormatError naming the offending byte offset.
PnmImage read_pnm(const std::string& path);

/// Write an 8-bit P5 file. Values must be in [0,1]; each sample is
/// quantized round-half-up to v*255.
void write_pnm(const FloatMap& map, const std::string& path);

/// Write an 8-bit P6 file from RGB planes in [0,1].
void write_pnm(const ColorImage& image, const std::string& path);

/// FMAP: lossless float raster for intermediate maps.
/// Layout: 'F','M','A','P', u32le width, u32le height, then
/// width*height IEEE-754 binary32 little-endian values, row-major.
FloatMap read_fmap(const std::string& path);
void write_fmap(const FloatMap& map, const std::string& path);

/// Load a P5 file as a binary contour mask: any nonzero sample is a
/// contour pixel.
ContourMask read_contour_mask(const std::string& path);

/// Load a P5 file as a segmentation. Raw sample values are taken as
/// labels and densified (in sorted order) to the contiguous range 0..S-1.
LabelMap read_label_map(const std::string& path);

/// Number of distinct labels (assumes the 0..S-1 invariant).
int label_count(const LabelMap& labels);

}  // namespace ldsal

#endif
