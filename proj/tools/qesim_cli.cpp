// qesim: compare images, benchmark datasets and generate synthetic data with
// the quasi-Euclidean, Euclidean and SSIM similarity measures.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qesim/bench.hpp"
#include "qesim/error.hpp"
#include "qesim/image_io.hpp"
#include "qesim/metrics.hpp"
#include "qesim/synthetic.hpp"

namespace {

namespace fs = std::filesystem;

// Stable process exit codes.
enum Exit : int {
  kOk = 0,
  kPartialFailure = 1,
  kUsage = 64,
  kDimensionMismatch = 65,
  kUnreadable = 66,
  kUnwritable = 73,
};

enum class OutputFormat { Text, Csv, Json };

struct CliConfig {
  std::string pairing_name = "neighbor";
  std::string format_name = "text";
  qesim::QePairing pairing = qesim::QePairing::NeighborHorizontal;
  qesim::SsimParams ssim;
  OutputFormat format = OutputFormat::Text;
  std::string out;
  unsigned jobs = 0;

  std::vector<std::string> inputs;
  std::string root;
  std::uint64_t seed = 42;
  std::vector<double> levels{0, 8, 16, 32, 64};
};

std::string fixed4(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", v);
  return buffer;
}

void add_metric_options(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--qe-pairing", cfg.pairing_name,
                  "How intensities form quasi-Euclidean points: neighbor, chunk or scalar")
      ->check(CLI::IsMember({"neighbor", "chunk", "scalar"}, CLI::ignore_case));
  cmd->add_option("--ssim-window", cfg.ssim.window_size, "SSIM window side (odd, >= 3)");
  cmd->add_option("--ssim-k1", cfg.ssim.k1, "SSIM luminance constant k1");
  cmd->add_option("--ssim-k2", cfg.ssim.k2, "SSIM contrast constant k2");
  cmd->add_option("--format", cfg.format_name, "Output format: text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}, CLI::ignore_case));
  cmd->add_option("--out", cfg.out, "Write the report to this file");
}

// Names were already checked by CLI::IsMember.
void resolve_names(CliConfig& cfg) {
  const std::map<std::string, qesim::QePairing> pairings{
      {"neighbor", qesim::QePairing::NeighborHorizontal},
      {"chunk", qesim::QePairing::ChunkPairs},
      {"scalar", qesim::QePairing::Scalar}};
  const std::map<std::string, OutputFormat> formats{
      {"text", OutputFormat::Text}, {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};
  cfg.pairing = pairings.at(cfg.pairing_name);
  cfg.format = formats.at(cfg.format_name);
}

bool write_output(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return true;
  }
  std::FILE* f = std::fopen(out.c_str(), "wb");
  if (!f) return false;
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  return std::fclose(f) == 0 && ok;
}

int cmd_compare(const CliConfig& cfg) {
  const qesim::GrayImage a = qesim::load_gray(cfg.inputs[0]);
  const qesim::GrayImage b = qesim::load_gray(cfg.inputs[1]);
  qesim::check_comparable(a, b);

  const double qe = qesim::qe_image_similarity(a, b, cfg.pairing).value;
  const double euclid = qesim::euclidean_image_similarity(a, b).value;
  const double ssim = qesim::ssim_mean(a, b, cfg.ssim).value;

  std::string text;
  switch (cfg.format) {
    case OutputFormat::Text:
      text = "quasi_euclidean " + fixed4(qe) + "\neuclidean " + fixed4(euclid) + "\nssim " +
             fixed4(ssim) + "\n";
      break;
    case OutputFormat::Csv:
      text = "metric,value\nquasi_euclidean," + fixed4(qe) + "\neuclidean," + fixed4(euclid) +
             "\nssim," + fixed4(ssim) + "\n";
      break;
    case OutputFormat::Json: {
      nlohmann::ordered_json doc{{"image_a", cfg.inputs[0]},
                                 {"image_b", cfg.inputs[1]},
                                 {"quasi_euclidean", qe},
                                 {"euclidean", euclid},
                                 {"ssim", ssim}};
      text = doc.dump(2) + "\n";
      break;
    }
  }
  if (!write_output(text, cfg.out)) {
    std::cerr << "qesim: cannot write " << cfg.out << "\n";
    return kUnwritable;
  }
  return kOk;
}

std::string format_table(const std::vector<qesim::CategoryReport>& reports) {
  std::size_t name_width = 8;
  for (const auto& r : reports) name_width = std::max(name_width, r.category.size());
  std::string out;
  char line[512];
  std::snprintf(line, sizeof(line), "%-*s %6s %15s %9s %7s\n", static_cast<int>(name_width),
                "category", "pairs", "quasi_euclidean", "euclidean", "ssim");
  out += line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof(line), "%-*s %6zu %15s %9s %7s\n", static_cast<int>(name_width),
                  r.category.c_str(), r.pair_count, fixed4(r.avg_qe).c_str(),
                  fixed4(r.avg_euclid).c_str(), fixed4(r.avg_ssim).c_str());
    out += line;
  }
  return out;
}

int cmd_bench(const CliConfig& cfg) {
  const qesim::DatasetLayout layout = qesim::scan_dataset(cfg.root);
  qesim::BenchOptions options;
  options.pairing = cfg.pairing;
  options.ssim = cfg.ssim;
  options.jobs = cfg.jobs;
  const qesim::BenchResult result = qesim::run_benchmark(layout, options);

  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";

  std::string serialized;
  if (cfg.format == OutputFormat::Csv) serialized = qesim::format_csv(result.reports);
  if (cfg.format == OutputFormat::Json) {
    serialized = qesim::format_json(result.reports, result.pairs, result.failures);
  }
  const std::string table = format_table(result.reports);

  if (cfg.out.empty()) {
    std::cout << (serialized.empty() ? table : serialized);
  } else {
    std::cout << table;
    if (!write_output(serialized.empty() ? table : serialized, cfg.out)) {
      std::cerr << "qesim: cannot write " << cfg.out << "\n";
      return kUnwritable;
    }
  }

  for (const auto& f : result.failures) {
    std::cerr << "failed: " << f.category << " " << f.image_a.string() << " "
              << f.image_b.string() << ": " << f.reason << "\n";
  }
  return result.failures.empty() ? kOk : kPartialFailure;
}

int cmd_gen_synth(const CliConfig& cfg) {
  const qesim::DatasetLayout layout = qesim::gen_synthetic(cfg.root, cfg.seed, cfg.levels);
  std::cout << layout.root.string() << "\n";
  for (const auto& c : layout.categories) {
    std::cout << "  " << c.name << " (" << c.images.size() << " images)\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Image similarity with quasi-Euclidean, Euclidean and SSIM measures", "qesim"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto* compare = app.add_subcommand("compare", "Score two images with all three measures");
  compare->add_option("images", cfg.inputs, "Two image files")->required()->expected(2);
  add_metric_options(compare, cfg);

  auto* bench = app.add_subcommand("bench", "Average within-category similarity of a dataset");
  bench->add_option("root", cfg.root, "Dataset root: root/<category>/<image>")->required();
  bench->add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)");
  add_metric_options(bench, cfg);

  auto* gen = app.add_subcommand("gen-synth", "Write a deterministic synthetic dataset");
  gen->add_option("out", cfg.root, "Output directory")->required();
  gen->add_option("--seed", cfg.seed, "Noise seed");
  gen->add_option("--levels", cfg.levels, "Gaussian noise sigmas")
      ->check(CLI::NonNegativeNumber)
      ->delimiter(',');

  try {
    app.parse(argc, argv);
    resolve_names(cfg);
    cfg.ssim.validate();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const qesim::InvalidArgument& e) {
    std::cerr << "qesim: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (compare->parsed()) return cmd_compare(cfg);
    if (bench->parsed()) return cmd_bench(cfg);
    return cmd_gen_synth(cfg);
  } catch (const qesim::DimensionMismatch& e) {
    std::cerr << "qesim: " << e.what() << "\n";
    return kDimensionMismatch;
  } catch (const qesim::NotFound& e) {
    std::cerr << "qesim: " << e.what() << "\n";
    return kUnreadable;
  } catch (const qesim::FormatError& e) {
    std::cerr << "qesim: " << e.what() << "\n";
    return kUnreadable;
  } catch (const qesim::IoError& e) {
    std::cerr << "qesim: " << e.what() << "\n";
    return kUnwritable;
  } catch (const qesim::InvalidArgument& e) {
    // Flags were validated above; what remains is an image too small for the
    // SSIM window.
    std::cerr << "qesim: " << e.what() << "\n";
    return kDimensionMismatch;
  } catch (const std::exception& e) {
    std::cerr << "qesim: " << e.what() << "\n";
    return kPartialFailure;
  }
}
