#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qesim/bench.hpp"
#include "qesim/image.hpp"

namespace qesim {

// Deterministic 64-bit generator with a portable Gaussian sampler. Output
// depends only on the seed (mt19937_64 is fully specified; the normal
// variates use Box-Muller on raw generator bits).
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed);

  // Uniform in [0, 1).
  double uniform();
  double gaussian();
  std::uint8_t uniform_byte();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Left-to-right ramp from 0 to 255.
GrayImage make_gradient(int width, int height);
// 16-pixel squares alternating 0 and 255.
GrayImage make_checkerboard(int width, int height, int cell = 16);
// I.i.d. uniform intensities.
GrayImage make_texture(int width, int height, std::uint64_t seed);

// Adds N(0, sigma^2) per pixel, rounds, clamps to [0, 255].
GrayImage add_gaussian_noise(const GrayImage& image, double sigma, NoiseSource& noise);

// Swaps every disjoint horizontally adjacent pixel pair (x, x+1), x even.
GrayImage swap_adjacent_pairs(const GrayImage& image);

struct SynthOptions {
  int size = 128;
  int variants_per_base = 4;
};

// Category directory name for one base at one noise level, e.g.
// "gradient_noise_sigma_16".
std::string synthetic_category_name(std::string_view base, double sigma);

// Writes one category per (base, noise level) under `out`, each holding the
// clean base and `variants_per_base` noisy copies. Same seed, same bytes.
DatasetLayout gen_synthetic(const std::filesystem::path& out, std::uint64_t seed,
                            std::span<const double> noise_levels,
                            const SynthOptions& options = {});

// 64-bit FNV-1a over a byte range, chained through `basis`.
std::uint64_t fnv1a(std::span<const std::uint8_t> bytes,
                    std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace qesim
