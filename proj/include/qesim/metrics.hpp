#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qesim/image.hpp"

namespace qesim {

inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kMaxIntensity = 255.0;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// How two grayscale images are turned into the point pairs fed to the
// quasi-Euclidean point metric.
enum class QePairing {
  // (I(p), I(p+1)) for every horizontally adjacent pixel pair in a row.
  NeighborHorizontal,
  // Disjoint consecutive pairs of the flattened image; an odd tail is padded
  // with 0 on both sides.
  ChunkPairs,
  // (I(p), 0) per pixel.
  Scalar,
};

std::string_view to_string(QePairing pairing);

enum class Metric { QuasiEuclidean, Euclidean, Ssim };

std::string_view to_string(Metric metric);

struct SimilarityScore {
  double value = 0.0;
  Metric metric = Metric::QuasiEuclidean;
};

struct SsimParams {
  int window_size = 7;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;

  double c1() const { return (k1 * dynamic_range) * (k1 * dynamic_range); }
  double c2() const { return (k2 * dynamic_range) * (k2 * dynamic_range); }

  // Throws InvalidArgument unless the window is odd and >= 3 and the
  // constants are positive and finite.
  void validate() const;
};

struct WindowStats {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  double cov_xy = 0.0;
};

// Row-major grid of SSIM values, one per fully interior window position.
struct SsimMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

// max(|dx|,|dy|) + (sqrt2 - 1) * min(|dx|,|dy|). Throws InvalidArgument on
// non-finite coordinates.
double qe_point_distance(Point2 a, Point2 b);

// Mean quasi-Euclidean distance over the pairs selected by `pairing`,
// normalised by the per-pair maximum sqrt2 * 255 and flipped to a similarity.
SimilarityScore qe_image_similarity(const GrayImage& a, const GrayImage& b,
                                    QePairing pairing = QePairing::NeighborHorizontal);

// 1 - ||a - b||_2 / (255 * sqrt(N)).
SimilarityScore euclidean_image_similarity(const GrayImage& a, const GrayImage& b);

// Population moments of two equally sized intensity blocks.
WindowStats window_stats(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

// SSIM of one window, product form with C1 = (k1 L)^2, C2 = (k2 L)^2.
double ssim_from_stats(const WindowStats& stats, const SsimParams& params);

SsimMap ssim_map(const GrayImage& a, const GrayImage& b, const SsimParams& params = {});

SimilarityScore ssim_mean(const GrayImage& a, const GrayImage& b, const SsimParams& params = {});

}  // namespace qesim
