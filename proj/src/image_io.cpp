#include "qesim/image_io.hpp"

#include <array>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "qesim/error.hpp"

namespace qesim {

namespace fs = std::filesystem;

namespace {

enum class Container { Png, Jpeg, Unknown };

Container sniff(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::array<unsigned char, 8> head{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  constexpr std::array<unsigned char, 8> kPng{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (got == 8 && head == kPng) return Container::Png;
  if (got >= 3 && head[0] == 0xff && head[1] == 0xd8 && head[2] == 0xff) return Container::Jpeg;
  return Container::Unknown;
}

void write_mat(const cv::Mat& mat, const fs::path& path) {
  bool ok = false;
  try {
    // Fixed compression settings so output bytes depend only on pixel data.
    ok = cv::imwrite(path.string(), mat, {cv::IMWRITE_PNG_COMPRESSION, 6});
  } catch (const cv::Exception& e) {
    throw IoError("cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) throw IoError("cannot write " + path.string());
}

}  // namespace

RgbImage load_image(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw NotFound("no such image file: " + path.string());

  if (sniff(path) == Container::Unknown) {
    throw FormatError(path.string() + ": not a PNG or JPEG file");
  }

  cv::Mat mat;
  try {
    mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  } catch (const cv::Exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (mat.empty()) throw FormatError(path.string() + ": could not decode image");
  if (mat.depth() != CV_8U) throw FormatError(path.string() + ": only 8-bit images are supported");

  const int channels = mat.channels();
  if (channels < 1 || channels > 4) {
    throw FormatError(path.string() + ": unsupported channel count " + std::to_string(channels));
  }

  RgbImage image(mat.cols, mat.rows);
  for (int y = 0; y < mat.rows; ++y) {
    const std::uint8_t* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < mat.cols; ++x) {
      const std::uint8_t* px = row + static_cast<std::size_t>(x) * channels;
      Rgb& out = image.at(x, y);
      if (channels <= 2) {
        out = {px[0], px[0], px[0]};  // gray, or gray + alpha
      } else {
        out = {px[2], px[1], px[0]};  // OpenCV stores BGR(A)
      }
    }
  }
  return image;
}

GrayImage to_grayscale(const RgbImage& image) {
  GrayImage gray(image.width(), image.height());
  auto out = gray.pixels();
  const auto in = image.pixels();
  for (std::size_t i = 0; i < in.size(); ++i) {
    // 0.299 r + 0.587 g + 0.114 b, rounded half up in exact integer arithmetic.
    const unsigned weighted = 299u * in[i].r + 587u * in[i].g + 114u * in[i].b;
    const unsigned value = (weighted + 500u) / 1000u;
    out[i] = static_cast<std::uint8_t>(value > 255u ? 255u : value);
  }
  return gray;
}

GrayImage load_gray(const fs::path& path) { return to_grayscale(load_image(path)); }

void check_comparable(const GrayImage& a, const GrayImage& b) {
  if (!a.same_size(b)) throw DimensionMismatch(a.width(), a.height(), b.width(), b.height());
}

void save_png(const GrayImage& image, const fs::path& path) {
  cv::Mat mat(image.height(), image.width(), CV_8UC1);
  for (int y = 0; y < image.height(); ++y) {
    auto* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < image.width(); ++x) row[x] = image.at(x, y);
  }
  write_mat(mat, path);
}

void save_png(const RgbImage& image, const fs::path& path) {
  cv::Mat mat(image.height(), image.width(), CV_8UC3);
  for (int y = 0; y < image.height(); ++y) {
    auto* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < image.width(); ++x) {
      const Rgb& px = image.at(x, y);
      row[3 * x + 0] = px.b;
      row[3 * x + 1] = px.g;
      row[3 * x + 2] = px.r;
    }
  }
  write_mat(mat, path);
}

}  // namespace qesim
