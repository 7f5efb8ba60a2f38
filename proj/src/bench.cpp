#include "qesim/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <functional>
#include <optional>
#include <system_error>
#include <thread>

#include "qesim/error.hpp"
#include "qesim/image_io.hpp"

namespace qesim {

namespace fs = std::filesystem;

namespace {

bool has_image_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

// Runs task(i) for i in [0, count) on up to `jobs` threads. Each task writes
// only its own output slot, so results never depend on scheduling.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
  for (auto& w : workers) w.join();
}

struct Decoded {
  std::optional<GrayImage> image;
  std::string error;
};

struct PairTask {
  std::size_t category;
  std::size_t a;
  std::size_t b;
};

struct PairOutcome {
  std::optional<PairResult> result;
  std::string error;
};

}  // namespace

DatasetLayout scan_dataset(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw NotFound("dataset root not found: " + root.string());

  DatasetLayout layout;
  layout.root = root;

  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) {
      dirs.push_back(entry.path());
    } else {
      layout.warnings.push_back("ignoring non-directory entry " + entry.path().string());
    }
  }
  std::sort(dirs.begin(), dirs.end());

  for (const auto& dir : dirs) {
    Category category;
    category.name = dir.filename().string();
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && has_image_extension(entry.path())) {
        category.images.push_back(entry.path());
      } else {
        layout.warnings.push_back("ignoring non-image entry " + entry.path().string());
      }
    }
    std::sort(category.images.begin(), category.images.end());
    if (category.images.size() < 2) {
      layout.warnings.push_back("skipping category " + category.name + ": " +
                                std::to_string(category.images.size()) +
                                " image(s), need at least 2");
      layout.skipped.push_back(category.name);
      continue;
    }
    layout.categories.push_back(std::move(category));
  }
  return layout;
}

BenchResult run_benchmark(const DatasetLayout& layout, const BenchOptions& options) {
  options.ssim.validate();

  // Decode every image once.
  std::vector<std::size_t> first_image;
  std::vector<const fs::path*> image_paths;
  for (const auto& category : layout.categories) {
    first_image.push_back(image_paths.size());
    for (const auto& path : category.images) image_paths.push_back(&path);
  }
  std::vector<Decoded> decoded(image_paths.size());
  parallel_for(image_paths.size(), options.jobs, [&](std::size_t i) {
    try {
      decoded[i].image = load_gray(*image_paths[i]);
    } catch (const std::exception& e) {
      decoded[i].error = e.what();
    }
  });

  std::vector<PairTask> tasks;
  for (std::size_t c = 0; c < layout.categories.size(); ++c) {
    const std::size_t n = layout.categories[c].images.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) tasks.push_back({c, a, b});
  }

  std::vector<PairOutcome> outcomes(tasks.size());
  parallel_for(tasks.size(), options.jobs, [&](std::size_t t) {
    const PairTask& task = tasks[t];
    const Decoded& da = decoded[first_image[task.category] + task.a];
    const Decoded& db = decoded[first_image[task.category] + task.b];
    PairOutcome& out = outcomes[t];
    if (!da.image || !db.image) {
      out.error = !da.image ? da.error : db.error;
      return;
    }
    try {
      PairResult r;
      r.qe = qe_image_similarity(*da.image, *db.image, options.pairing).value;
      r.euclid = euclidean_image_similarity(*da.image, *db.image).value;
      r.ssim = ssim_mean(*da.image, *db.image, options.ssim).value;
      out.result = std::move(r);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  });

  BenchResult result;
  result.warnings = layout.warnings;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const Category& category = layout.categories[tasks[t].category];
    const fs::path& a = category.images[tasks[t].a];
    const fs::path& b = category.images[tasks[t].b];
    if (outcomes[t].result) {
      PairResult r = std::move(*outcomes[t].result);
      r.category = category.name;
      r.image_a = a;
      r.image_b = b;
      result.pairs.push_back(std::move(r));
    } else {
      result.failures.push_back({category.name, a, b, outcomes[t].error});
    }
  }

  result.reports = aggregate(result.pairs);
  for (const auto& category : layout.categories) {
    const bool reported =
        std::any_of(result.reports.begin(), result.reports.end(),
                    [&](const CategoryReport& r) { return r.category == category.name; });
    if (!reported) {
      result.warnings.push_back("category " + category.name + " has no successful pairs");
    }
  }
  for (const auto& f : result.failures) {
    result.warnings.push_back("pair failed in " + f.category + ": " + f.image_a.string() +
                              " vs " + f.image_b.string() + ": " + f.reason);
  }
  return result;
}

std::vector<CategoryReport> aggregate(const std::vector<PairResult>& pairs) {
  std::vector<CategoryReport> reports;
  std::vector<std::string> order;
  struct Sums {
    double qe = 0, euclid = 0, ssim = 0;
    std::size_t count = 0;
  };
  std::vector<Sums> sums;
  for (const auto& p : pairs) {
    auto it = std::find(order.begin(), order.end(), p.category);
    std::size_t slot = static_cast<std::size_t>(it - order.begin());
    if (it == order.end()) {
      order.push_back(p.category);
      sums.emplace_back();
    }
    sums[slot].qe += p.qe;
    sums[slot].euclid += p.euclid;
    sums[slot].ssim += p.ssim;
    ++sums[slot].count;
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double n = static_cast<double>(sums[i].count);
    reports.push_back({order[i], sums[i].count, sums[i].qe / n, sums[i].euclid / n,
                       sums[i].ssim / n});
  }
  return reports;
}

}  // namespace qesim
