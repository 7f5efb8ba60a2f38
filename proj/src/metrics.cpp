#include "qesim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "qesim/error.hpp"
#include "qesim/image_io.hpp"

namespace qesim {

DimensionMismatch::DimensionMismatch(int width_a, int height_a, int width_b, int height_b)
    : Error("image dimensions differ: " + std::to_string(width_a) + "x" +
            std::to_string(height_a) + " vs " + std::to_string(width_b) + "x" +
            std::to_string(height_b)),
      width_a_(width_a),
      height_a_(height_a),
      width_b_(width_b),
      height_b_(height_b) {}

namespace {

void require_positive_size(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw InvalidArgument("image dimensions must be positive, got " + std::to_string(width) +
                          "x" + std::to_string(height));
  }
}

std::size_t pixel_count(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  require_positive_size(width, height);
  data_.assign(pixel_count(width, height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> intensities)
    : width_(width), height_(height), data_(std::move(intensities)) {
  require_positive_size(width, height);
  if (data_.size() != pixel_count(width, height)) {
    throw InvalidArgument("intensity buffer holds " + std::to_string(data_.size()) +
                          " samples, expected " + std::to_string(pixel_count(width, height)));
  }
}

RgbImage::RgbImage(int width, int height, Rgb fill) : width_(width), height_(height) {
  require_positive_size(width, height);
  data_.assign(pixel_count(width, height), fill);
}

RgbImage::RgbImage(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), data_(std::move(pixels)) {
  require_positive_size(width, height);
  if (data_.size() != pixel_count(width, height)) {
    throw InvalidArgument("pixel buffer holds " + std::to_string(data_.size()) +
                          " pixels, expected " + std::to_string(pixel_count(width, height)));
  }
}

std::string_view to_string(QePairing pairing) {
  switch (pairing) {
    case QePairing::NeighborHorizontal: return "neighbor";
    case QePairing::ChunkPairs: return "chunk";
    case QePairing::Scalar: return "scalar";
  }
  return "unknown";
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::QuasiEuclidean: return "quasi_euclidean";
    case Metric::Euclidean: return "euclidean";
    case Metric::Ssim: return "ssim";
  }
  return "unknown";
}

namespace {

constexpr double kDiagonalExcess = kSqrt2 - 1.0;

// Unchecked form used in the per-pixel loops; inputs there are intensities.
inline double quasi_euclidean(double x1, double y1, double x2, double y2) {
  const double dx = std::fabs(x1 - x2);
  const double dy = std::fabs(y1 - y2);
  if (dx > dy) return dx + kDiagonalExcess * dy;
  return kDiagonalExcess * dx + dy;
}

}  // namespace

double qe_point_distance(Point2 a, Point2 b) {
  if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(b.x) ||
      !std::isfinite(b.y)) {
    throw InvalidArgument("qe_point_distance: coordinates must be finite");
  }
  return quasi_euclidean(a.x, a.y, b.x, b.y);
}

SimilarityScore qe_image_similarity(const GrayImage& a, const GrayImage& b,
                                    QePairing pairing) {
  check_comparable(a, b);

  const auto pa = a.pixels();
  const auto pb = b.pixels();
  const int width = a.width();

  // A single column has no horizontal neighbours; compare intensities directly.
  if (pairing == QePairing::NeighborHorizontal && width < 2) pairing = QePairing::Scalar;

  double total = 0.0;
  std::size_t pairs = 0;
  switch (pairing) {
    case QePairing::NeighborHorizontal:
      for (int y = 0; y < a.height(); ++y) {
        const std::size_t row = static_cast<std::size_t>(y) * static_cast<std::size_t>(width);
        for (int x = 0; x + 1 < width; ++x) {
          const std::size_t p = row + static_cast<std::size_t>(x);
          total += quasi_euclidean(pa[p], pa[p + 1], pb[p], pb[p + 1]);
        }
      }
      pairs = static_cast<std::size_t>(width - 1) * static_cast<std::size_t>(a.height());
      break;
    case QePairing::ChunkPairs:
      for (std::size_t p = 0; p < pa.size(); p += 2) {
        const double next_a = p + 1 < pa.size() ? pa[p + 1] : 0.0;
        const double next_b = p + 1 < pb.size() ? pb[p + 1] : 0.0;
        total += quasi_euclidean(pa[p], next_a, pb[p], next_b);
        ++pairs;
      }
      break;
    case QePairing::Scalar:
      for (std::size_t p = 0; p < pa.size(); ++p) total += quasi_euclidean(pa[p], 0.0, pb[p], 0.0);
      pairs = pa.size();
      break;
  }

  const double ratio = total / (static_cast<double>(pairs) * kSqrt2 * kMaxIntensity);
  return {std::clamp(1.0 - ratio, 0.0, 1.0), Metric::QuasiEuclidean};
}

SimilarityScore euclidean_image_similarity(const GrayImage& a, const GrayImage& b) {
  check_comparable(a, b);

  // Exact: at most 65025 per pixel.
  std::int64_t squared = 0;
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  for (std::size_t p = 0; p < pa.size(); ++p) {
    const std::int64_t d = std::int64_t{pa[p]} - std::int64_t{pb[p]};
    squared += d * d;
  }
  const double distance = std::sqrt(static_cast<double>(squared));
  const double max_distance = kMaxIntensity * std::sqrt(static_cast<double>(pa.size()));
  return {std::clamp(1.0 - distance / max_distance, 0.0, 1.0), Metric::Euclidean};
}

}  // namespace qesim
