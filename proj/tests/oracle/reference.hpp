#pragma once

// Test-only reference computations. Deliberately naive and written without
// reference to the library's implementation paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qesim/image.hpp"

namespace qesim::oracle {

// Path length with min(|dx|,|dy|) diagonal steps of length sqrt(2) and the
// remainder as straight axis steps.
inline double qe_path_length(double x1, double y1, double x2, double y2) {
  const double dx = std::fabs(x2 - x1);
  const double dy = std::fabs(y2 - y1);
  const double diagonal_steps = dx < dy ? dx : dy;
  const double straight_steps = (dx < dy ? dy : dx) - diagonal_steps;
  return diagonal_steps * std::sqrt(2.0) + straight_steps;
}

inline double mean_absolute_difference(const GrayImage& a, const GrayImage& b) {
  double total = 0.0;
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      total += std::fabs(double(a.at(x, y)) - double(b.at(x, y)));
  return total / double(a.width() * a.height());
}

// Two-pass moments on every interior window, product-form SSIM.
inline std::vector<std::vector<double>> ssim_map_naive(const GrayImage& a, const GrayImage& b,
                                                       int w, double k1 = 0.01,
                                                       double k2 = 0.03, double L = 255.0) {
  const double c1 = (k1 * L) * (k1 * L);
  const double c2 = (k2 * L) * (k2 * L);
  const double n = double(w) * double(w);
  std::vector<std::vector<double>> out;
  for (int top = 0; top + w <= a.height(); ++top) {
    std::vector<double> row;
    for (int left = 0; left + w <= a.width(); ++left) {
      double mx = 0, my = 0;
      for (int dy = 0; dy < w; ++dy)
        for (int dx = 0; dx < w; ++dx) {
          mx += a.at(left + dx, top + dy);
          my += b.at(left + dx, top + dy);
        }
      mx /= n;
      my /= n;
      double vx = 0, vy = 0, cxy = 0;
      for (int dy = 0; dy < w; ++dy)
        for (int dx = 0; dx < w; ++dx) {
          const double ex = a.at(left + dx, top + dy) - mx;
          const double ey = b.at(left + dx, top + dy) - my;
          vx += ex * ex;
          vy += ey * ey;
          cxy += ex * ey;
        }
      vx /= n;
      vy /= n;
      cxy /= n;
      row.push_back(((2 * mx * my + c1) * (2 * cxy + c2)) /
                    ((mx * mx + my * my + c1) * (vx + vy + c2)));
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace qesim::oracle
