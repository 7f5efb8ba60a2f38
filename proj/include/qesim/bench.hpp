#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "qesim/metrics.hpp"

namespace qesim {

struct Category {
  std::string name;
  std::vector<std::filesystem::path> images;  // lexicographic
};

struct DatasetLayout {
  std::filesystem::path root;
  std::vector<Category> categories;      // each with >= 2 images
  std::vector<std::string> skipped;      // categories with < 2 images
  std::vector<std::string> warnings;
};

struct PairResult {
  std::string category;
  std::filesystem::path image_a;
  std::filesystem::path image_b;
  double qe = 0.0;
  double euclid = 0.0;
  double ssim = 0.0;
};

struct FailedPair {
  std::string category;
  std::filesystem::path image_a;
  std::filesystem::path image_b;
  std::string reason;
};

struct CategoryReport {
  std::string category;
  std::size_t pair_count = 0;
  double avg_qe = 0.0;
  double avg_euclid = 0.0;
  double avg_ssim = 0.0;

  friend bool operator==(const CategoryReport&, const CategoryReport&) = default;
};

struct BenchResult {
  std::vector<PairResult> pairs;
  std::vector<FailedPair> failures;
  std::vector<CategoryReport> reports;
  std::vector<std::string> warnings;
};

struct BenchOptions {
  QePairing pairing = QePairing::NeighborHorizontal;
  SsimParams ssim;
  // Worker threads for decoding and scoring; 0 picks the hardware count.
  unsigned jobs = 1;
};

// One category per immediate subdirectory of `root`, images (.png, .jpg,
// .jpeg) sorted lexicographically. Throws NotFound if root is missing.
DatasetLayout scan_dataset(const std::filesystem::path& root);

// Scores every unordered pair inside each category with all three metrics.
// Pairs that fail to decode or compare are collected in `failures`; results
// and averages do not depend on `jobs`.
BenchResult run_benchmark(const DatasetLayout& layout, const BenchOptions& options = {});

// Arithmetic means of the successful pairs, one report per category in order
// of first appearance. Categories with no pairs produce no report.
std::vector<CategoryReport> aggregate(const std::vector<PairResult>& pairs);

enum class ReportFormat { Csv, Json };

std::string format_csv(const std::vector<CategoryReport>& reports);
std::string format_json(const std::vector<CategoryReport>& reports,
                        const std::vector<PairResult>& pairs,
                        const std::vector<FailedPair>& failures = {});
std::vector<CategoryReport> reports_from_json(const std::string& json);

void write_report(const std::vector<CategoryReport>& reports,
                  const std::vector<PairResult>& pairs, ReportFormat format,
                  const std::filesystem::path& out,
                  const std::vector<FailedPair>& failures = {});

}  // namespace qesim
