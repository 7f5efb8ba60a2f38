#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qesim/bench.hpp"
#include "qesim/error.hpp"

namespace qesim {

namespace {

std::string fixed4(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", v);
  return buffer;
}

}  // namespace

std::string format_csv(const std::vector<CategoryReport>& reports) {
  std::string out = "category,pair_count,avg_qe,avg_euclid,avg_ssim\n";
  for (const auto& r : reports) {
    out += r.category + "," + std::to_string(r.pair_count) + "," + fixed4(r.avg_qe) + "," +
           fixed4(r.avg_euclid) + "," + fixed4(r.avg_ssim) + "\n";
  }
  return out;
}

std::string format_json(const std::vector<CategoryReport>& reports,
                        const std::vector<PairResult>& pairs,
                        const std::vector<FailedPair>& failures) {
  nlohmann::ordered_json doc;
  doc["categories"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    doc["categories"].push_back({{"category", r.category},
                                 {"pair_count", r.pair_count},
                                 {"avg_qe", r.avg_qe},
                                 {"avg_euclid", r.avg_euclid},
                                 {"avg_ssim", r.avg_ssim}});
  }
  doc["pairs"] = nlohmann::ordered_json::array();
  for (const auto& p : pairs) {
    doc["pairs"].push_back({{"category", p.category},
                            {"image_a", p.image_a.generic_string()},
                            {"image_b", p.image_b.generic_string()},
                            {"qe", p.qe},
                            {"euclid", p.euclid},
                            {"ssim", p.ssim}});
  }
  doc["failed_pairs"] = nlohmann::ordered_json::array();
  for (const auto& f : failures) {
    doc["failed_pairs"].push_back({{"category", f.category},
                                   {"image_a", f.image_a.generic_string()},
                                   {"image_b", f.image_b.generic_string()},
                                   {"reason", f.reason}});
  }
  return doc.dump(2) + "\n";
}

std::vector<CategoryReport> reports_from_json(const std::string& json) {
  std::vector<CategoryReport> reports;
  try {
    const auto doc = nlohmann::json::parse(json);
    for (const auto& c : doc.at("categories")) {
      reports.push_back({c.at("category").get<std::string>(),
                         c.at("pair_count").get<std::size_t>(), c.at("avg_qe").get<double>(),
                         c.at("avg_euclid").get<double>(), c.at("avg_ssim").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed report JSON: ") + e.what());
  }
  return reports;
}

void write_report(const std::vector<CategoryReport>& reports,
                  const std::vector<PairResult>& pairs, ReportFormat format,
                  const std::filesystem::path& out, const std::vector<FailedPair>& failures) {
  const std::string text =
      format == ReportFormat::Csv ? format_csv(reports) : format_json(reports, pairs, failures);
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + out.string() + " for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing " + out.string());
}

}  // namespace qesim
