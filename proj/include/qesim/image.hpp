#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qesim {

// Row-major 8-bit grayscale raster. Width and height are always positive and
// the buffer always holds exactly width * height samples.
class GrayImage {
 public:
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> intensities);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  std::uint8_t at(int x, int y) const { return data_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return data_[index(x, y)]; }

  std::span<const std::uint8_t> pixels() const { return data_; }
  std::span<std::uint8_t> pixels() { return data_; }

  bool same_size(const GrayImage& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

class RgbImage {
 public:
  RgbImage(int width, int height, Rgb fill = {});
  RgbImage(int width, int height, std::vector<Rgb> pixels);

  int width() const { return width_; }
  int height() const { return height_; }

  const Rgb& at(int x, int y) const { return data_[index(x, y)]; }
  Rgb& at(int x, int y) { return data_[index(x, y)]; }

  std::span<const Rgb> pixels() const { return data_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<Rgb> data_;
};

}  // namespace qesim
