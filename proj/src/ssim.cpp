#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qesim/error.hpp"
#include "qesim/image_io.hpp"
#include "qesim/metrics.hpp"

namespace qesim {

void SsimParams::validate() const {
  if (window_size < 3 || window_size % 2 == 0) {
    throw InvalidArgument("SSIM window size must be odd and >= 3, got " +
                          std::to_string(window_size));
  }
  if (!(k1 > 0.0) || !(k2 > 0.0) || !(dynamic_range > 0.0) || !std::isfinite(k1) ||
      !std::isfinite(k2) || !std::isfinite(dynamic_range)) {
    throw InvalidArgument("SSIM constants k1, k2 and dynamic range must be positive");
  }
}

namespace {

// Window sums are integers, so every moment below is derived from exact
// values: n^2 var = n * sum(x^2) - sum(x)^2 holds without cancellation error.
struct WindowSums {
  std::int64_t n = 0;
  std::int64_t sx = 0, sy = 0;
  std::int64_t sxx = 0, syy = 0, sxy = 0;

  WindowStats stats() const {
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    WindowStats s;
    s.mean_x = static_cast<double>(sx) / static_cast<double>(n);
    s.mean_y = static_cast<double>(sy) / static_cast<double>(n);
    s.var_x = static_cast<double>(n * sxx - sx * sx) / n2;
    s.var_y = static_cast<double>(n * syy - sy * sy) / n2;
    s.cov_xy = static_cast<double>(n * sxy - sx * sy) / n2;
    return s;
  }
};

// Summed-area table with a zero guard row/column.
class IntegralImage {
 public:
  template <typename F>
  IntegralImage(int width, int height, F&& sample)
      : stride_(static_cast<std::size_t>(width) + 1),
        table_(stride_ * (static_cast<std::size_t>(height) + 1), 0) {
    for (int y = 0; y < height; ++y) {
      std::int64_t row = 0;
      for (int x = 0; x < width; ++x) {
        row += sample(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(x));
        cell(x + 1, y + 1) = cell(x + 1, y) + row;
      }
    }
  }

  std::int64_t box(int left, int top, int size) const {
    return cell(left + size, top + size) - cell(left, top + size) - cell(left + size, top) +
           cell(left, top);
  }

 private:
  std::int64_t& cell(int x, int y) {
    return table_[static_cast<std::size_t>(y) * stride_ + static_cast<std::size_t>(x)];
  }
  std::int64_t cell(int x, int y) const {
    return table_[static_cast<std::size_t>(y) * stride_ + static_cast<std::size_t>(x)];
  }

  std::size_t stride_;
  std::vector<std::int64_t> table_;
};

}  // namespace

WindowStats window_stats(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
  if (x.size() != y.size()) {
    throw InvalidArgument("window_stats: blocks hold " + std::to_string(x.size()) + " and " +
                          std::to_string(y.size()) + " samples");
  }
  if (x.empty()) throw InvalidArgument("window_stats: empty block");

  WindowSums sums;
  sums.n = static_cast<std::int64_t>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::int64_t vx = x[i];
    const std::int64_t vy = y[i];
    sums.sx += vx;
    sums.sy += vy;
    sums.sxx += vx * vx;
    sums.syy += vy * vy;
    sums.sxy += vx * vy;
  }
  return sums.stats();
}

double ssim_from_stats(const WindowStats& s, const SsimParams& params) {
  const double c1 = params.c1();
  const double c2 = params.c2();
  const double luminance_num = 2.0 * s.mean_x * s.mean_y + c1;
  const double luminance_den = s.mean_x * s.mean_x + s.mean_y * s.mean_y + c1;
  const double structure_num = 2.0 * s.cov_xy + c2;
  const double structure_den = s.var_x + s.var_y + c2;
  return (luminance_num * structure_num) / (luminance_den * structure_den);
}

SsimMap ssim_map(const GrayImage& a, const GrayImage& b, const SsimParams& params) {
  params.validate();
  check_comparable(a, b);
  const int w = params.window_size;
  if (a.width() < w || a.height() < w) {
    throw InvalidArgument("image " + std::to_string(a.width()) + "x" +
                          std::to_string(a.height()) + " is smaller than the " +
                          std::to_string(w) + "x" + std::to_string(w) + " SSIM window");
  }

  const auto pa = a.pixels();
  const auto pb = b.pixels();
  const IntegralImage sum_x(a.width(), a.height(), [&](std::size_t i) { return pa[i]; });
  const IntegralImage sum_y(a.width(), a.height(), [&](std::size_t i) { return pb[i]; });
  const IntegralImage sum_xx(a.width(), a.height(),
                             [&](std::size_t i) { return std::int64_t{pa[i]} * pa[i]; });
  const IntegralImage sum_yy(a.width(), a.height(),
                             [&](std::size_t i) { return std::int64_t{pb[i]} * pb[i]; });
  const IntegralImage sum_xy(a.width(), a.height(),
                             [&](std::size_t i) { return std::int64_t{pa[i]} * pb[i]; });

  SsimMap map;
  map.width = a.width() - w + 1;
  map.height = a.height() - w + 1;
  map.values.reserve(static_cast<std::size_t>(map.width) * static_cast<std::size_t>(map.height));
  WindowSums sums;
  sums.n = static_cast<std::int64_t>(w) * w;
  for (int top = 0; top < map.height; ++top) {
    for (int left = 0; left < map.width; ++left) {
      sums.sx = sum_x.box(left, top, w);
      sums.sy = sum_y.box(left, top, w);
      sums.sxx = sum_xx.box(left, top, w);
      sums.syy = sum_yy.box(left, top, w);
      sums.sxy = sum_xy.box(left, top, w);
      map.values.push_back(ssim_from_stats(sums.stats(), params));
    }
  }
  return map;
}

SimilarityScore ssim_mean(const GrayImage& a, const GrayImage& b, const SsimParams& params) {
  const SsimMap map = ssim_map(a, b, params);
  const double total = std::accumulate(map.values.begin(), map.values.end(), 0.0);
  const double mean = total / static_cast<double>(map.values.size());
  return {std::clamp(mean, -1.0, 1.0), Metric::Ssim};
}

}  // namespace qesim
