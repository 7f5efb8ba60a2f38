#pragma once

#include <filesystem>

#include "qesim/image.hpp"

namespace qesim {

// Decodes an 8-bit PNG or JPEG. Grayscale sources come back with r = g = b;
// alpha is dropped. Throws NotFound for a missing path and FormatError for
// anything that is not a decodable 8-bit PNG/JPEG.
RgbImage load_image(const std::filesystem::path& path);

// BT.601 luma, rounded half away from zero.
GrayImage to_grayscale(const RgbImage& image);

// load_image followed by to_grayscale.
GrayImage load_gray(const std::filesystem::path& path);

// Throws DimensionMismatch carrying both sizes unless a and b agree.
void check_comparable(const GrayImage& a, const GrayImage& b);

// Lossless PNG writers; throw IoError when the file cannot be written.
void save_png(const GrayImage& image, const std::filesystem::path& path);
void save_png(const RgbImage& image, const std::filesystem::path& path);

}  // namespace qesim
