#include "qesim/synthetic.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <cmath>
#include <numbers>
#include <string>
#include <system_error>

#include "qesim/error.hpp"
#include "qesim/image_io.hpp"

namespace qesim {

namespace fs = std::filesystem;

NoiseSource::NoiseSource(std::uint64_t seed) : engine_(seed) {}

double NoiseSource::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint8_t NoiseSource::uniform_byte() { return static_cast<std::uint8_t>(engine_() >> 56); }

double NoiseSource::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

GrayImage make_gradient(int width, int height) {
  GrayImage image(width, height);
  const int span = width > 1 ? width - 1 : 1;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      image.at(x, y) = static_cast<std::uint8_t>((255 * x + span / 2) / span);
  return image;
}

GrayImage make_checkerboard(int width, int height, int cell) {
  if (cell <= 0) throw InvalidArgument("checkerboard cell size must be positive");
  GrayImage image(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      image.at(x, y) = ((x / cell + y / cell) % 2) ? 255 : 0;
  return image;
}

GrayImage make_texture(int width, int height, std::uint64_t seed) {
  GrayImage image(width, height);
  NoiseSource source(seed);
  for (auto& v : image.pixels()) v = source.uniform_byte();
  return image;
}

GrayImage add_gaussian_noise(const GrayImage& image, double sigma, NoiseSource& noise) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("noise sigma must be finite and nonnegative");
  }
  GrayImage out = image;
  if (sigma == 0.0) return out;
  for (auto& v : out.pixels()) {
    const double noisy = std::round(static_cast<double>(v) + sigma * noise.gaussian());
    v = static_cast<std::uint8_t>(std::clamp(noisy, 0.0, 255.0));
  }
  return out;
}

GrayImage swap_adjacent_pairs(const GrayImage& image) {
  GrayImage out = image;
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x + 1 < image.width(); x += 2) {
      out.at(x, y) = image.at(x + 1, y);
      out.at(x + 1, y) = image.at(x, y);
    }
  return out;
}

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes, std::uint64_t basis) {
  std::uint64_t hash = basis;
  for (const std::uint8_t b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

namespace {

constexpr std::uint64_t kTextureSeed = 0x51ab7e3c9d02f1aULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t noise_stream_seed(std::uint64_t seed, std::size_t base, double sigma,
                                int variant) {
  std::uint64_t sigma_bits = 0;
  static_assert(sizeof(sigma_bits) == sizeof(sigma));
  std::memcpy(&sigma_bits, &sigma, sizeof(sigma));
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ base);
  h = splitmix64(h ^ sigma_bits);
  return splitmix64(h ^ static_cast<std::uint64_t>(variant));
}

std::string format_sigma(double sigma) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), sigma);
  return std::string(buffer, ec == std::errc{} ? end : buffer);
}

}  // namespace

std::string synthetic_category_name(std::string_view base, double sigma) {
  return std::string(base) + "_noise_sigma_" + format_sigma(sigma);
}

DatasetLayout gen_synthetic(const fs::path& out, std::uint64_t seed,
                            std::span<const double> noise_levels, const SynthOptions& options) {
  for (const double sigma : noise_levels) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
      throw InvalidArgument("noise levels must be finite and nonnegative");
    }
  }
  if (options.size < 8 || options.variants_per_base < 1) {
    throw InvalidArgument("synthetic images need size >= 8 and at least one variant");
  }

  const int n = options.size;
  const std::vector<std::pair<std::string, GrayImage>> bases = {
      {"checkerboard", make_checkerboard(n, n)},
      {"gradient", make_gradient(n, n)},
      {"texture", make_texture(n, n, kTextureSeed)},
  };

  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    throw IoError("cannot create output directory " + out.string() + ": " + ec.message());
  }

  for (const double sigma : noise_levels) {
    for (std::size_t b = 0; b < bases.size(); ++b) {
      const auto& [name, base] = bases[b];
      const fs::path dir = out / synthetic_category_name(name, sigma);
      fs::create_directories(dir, ec);
      if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
      save_png(base, dir / "base.png");
      for (int v = 0; v < options.variants_per_base; ++v) {
        NoiseSource noise(noise_stream_seed(seed, b, sigma, v));
        char file[32];
        std::snprintf(file, sizeof(file), "variant_%02d.png", v);
        save_png(add_gaussian_noise(base, sigma, noise), dir / file);
      }
    }
  }
  return scan_dataset(out);
}

}  // namespace qesim
