#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "qesim/error.hpp"
#include "qesim/image_io.hpp"
#include "qesim/synthetic.hpp"
#include "test_util.hpp"

namespace qesim {
namespace {

using testing::TempDir;

// Pixel-data fingerprint of every image in the layout's categories whose
// name ends with `suffix`, in layout order.
std::uint64_t pixel_checksum(const DatasetLayout& layout, const std::string& suffix) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const auto& c : layout.categories) {
    if (!c.name.ends_with(suffix)) continue;
    for (const auto& p : c.images) hash = fnv1a(load_gray(p).pixels(), hash);
  }
  return hash;
}

std::map<std::string, std::string> tree_bytes(const std::filesystem::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      files[std::filesystem::relative(e.path(), root).generic_string()] =
          testing::read_file(e.path());
    }
  }
  return files;
}

TEST(NoiseSource, GaussianMoments) {
  NoiseSource noise(123);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = noise.gaussian();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.01);
}

TEST(NoiseSource, Deterministic) {
  NoiseSource a(5), b(5);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.gaussian(), b.gaussian());
}

TEST(Generators, Shapes) {
  const GrayImage g = make_gradient(128, 4);
  EXPECT_EQ(g.at(0, 0), 0);
  EXPECT_EQ(g.at(127, 3), 255);
  for (int x = 1; x < 128; ++x) ASSERT_GE(g.at(x, 0), g.at(x - 1, 0));

  const GrayImage c = make_checkerboard(32, 32);
  EXPECT_EQ(c.at(0, 0), 0);
  EXPECT_EQ(c.at(16, 0), 255);
  EXPECT_EQ(c.at(16, 16), 0);

  EXPECT_EQ(make_texture(16, 16, 1), make_texture(16, 16, 1));
  EXPECT_NE(make_texture(16, 16, 1), make_texture(16, 16, 2));
}

TEST(Generators, ZeroNoiseIsIdentity) {
  NoiseSource noise(1);
  const GrayImage t = make_texture(20, 20, 3);
  EXPECT_EQ(add_gaussian_noise(t, 0.0, noise), t);
  EXPECT_THROW(add_gaussian_noise(t, -1.0, noise), InvalidArgument);
}

TEST(Generators, SwapAdjacentPairs) {
  const GrayImage a(5, 1, std::vector<std::uint8_t>{1, 2, 3, 4, 5});
  EXPECT_EQ(swap_adjacent_pairs(a), GrayImage(5, 1, std::vector<std::uint8_t>({2, 1, 4, 3, 5})));
  const GrayImage t = make_texture(16, 8, 9);
  EXPECT_EQ(swap_adjacent_pairs(swap_adjacent_pairs(t)), t);
}

TEST(GenSynthetic, Layout) {
  TempDir dir;
  const std::vector<double> levels{0, 8, 16, 32, 64};
  const DatasetLayout layout = gen_synthetic(dir.path(), 42, levels);
  ASSERT_EQ(layout.categories.size(), 15u);
  EXPECT_TRUE(layout.skipped.empty());
  for (const auto& c : layout.categories) {
    EXPECT_EQ(c.images.size(), 5u) << c.name;
    EXPECT_EQ(load_gray(c.images.front()).width(), 128);
  }
  EXPECT_EQ(layout.categories[0].name, "checkerboard_noise_sigma_0");
  EXPECT_EQ(synthetic_category_name("gradient", 2.5), "gradient_noise_sigma_2.5");
}

TEST(GenSynthetic, ZeroNoiseVariantsEqualBases) {
  TempDir dir;
  const std::vector<double> levels{0};
  const DatasetLayout layout = gen_synthetic(dir.path(), 7, levels);
  for (const auto& c : layout.categories) {
    const GrayImage base = load_gray(c.images.front());
    for (const auto& p : c.images) EXPECT_EQ(load_gray(p), base) << p;
  }
}

TEST(GenSynthetic, SameSeedSameBytes) {
  TempDir a, b;
  const std::vector<double> levels{0, 16};
  gen_synthetic(a.path(), 42, levels);
  gen_synthetic(b.path(), 42, levels);
  EXPECT_EQ(tree_bytes(a.path()), tree_bytes(b.path()));
}

TEST(GenSynthetic, SeedChangesNoiseNotBases) {
  TempDir a, b;
  const std::vector<double> levels{16};
  gen_synthetic(a.path(), 42, levels);
  gen_synthetic(b.path(), 43, levels);
  const auto fa = tree_bytes(a.path()), fb = tree_bytes(b.path());
  ASSERT_EQ(fa.size(), fb.size());
  for (const auto& [name, bytes] : fa) {
    if (name.ends_with("base.png")) {
      EXPECT_EQ(bytes, fb.at(name)) << name;
    } else {
      EXPECT_NE(bytes, fb.at(name)) << name;
    }
  }
}

TEST(GenSynthetic, LevelFilesIndependentOfOtherLevels) {
  TempDir a, b;
  const std::vector<double> one{16}, many{0, 16, 64};
  gen_synthetic(a.path(), 42, one);
  gen_synthetic(b.path(), 42, many);
  const auto fa = tree_bytes(a.path()), fb = tree_bytes(b.path());
  for (const auto& [name, bytes] : fa) EXPECT_EQ(bytes, fb.at(name)) << name;
}

TEST(GenSynthetic, PinnedChecksum) {
  TempDir dir;
  const std::vector<double> levels{16};
  const DatasetLayout layout = gen_synthetic(dir.path(), 42, levels);
  EXPECT_EQ(pixel_checksum(layout, "_noise_sigma_16"), 0x2846a0d3eccef887ULL);
}

TEST(GenSynthetic, Errors) {
  TempDir dir;
  const std::vector<double> bad{-1};
  EXPECT_THROW(gen_synthetic(dir.path(), 1, bad), InvalidArgument);
  testing::write_file(dir / "file", "x");
  const std::vector<double> ok{0};
  EXPECT_THROW(gen_synthetic(dir / "file" / "sub", 1, ok), IoError);
}

}  // namespace
}  // namespace qesim
