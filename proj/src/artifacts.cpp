#include "lacunary/artifacts.hpp"

#include <charconv>
#include <fstream>

#include "lacunary/common.hpp"

namespace lacunary {

namespace {

using nlohmann::ordered_json;

// FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[i] = digits[v & 0xf];
  return out;
}

ordered_json params_to_json(const std::map<std::string, std::string>& params) {
  ordered_json j = ordered_json::object();
  for (const auto& [key, value] : params) j[key] = value;
  return j;
}

}  // namespace

std::string experiment_id(const std::string& kind, const ordered_json& config) {
  return hex64(fnv1a(kind + "\n" + config.dump()));
}

ordered_json artifact_envelope(const std::string& kind, const ordered_json& config) {
  ordered_json j;
  j["artifact_version"] = kArtifactVersion;
  j["tool_version"] = kToolVersion;
  j["experiment_id"] = experiment_id(kind, config);
  j["kind"] = kind;
  j["config"] = config;
  return j;
}

ordered_json certificate_to_json(const ConditionCertificate& cert) {
  ordered_json j;
  j["condition"] = cert.kind;
  j["verdict"] = verdict_name(cert.verdict);
  j["observed_max_count"] = cert.observed_max_count;
  j["observed_max_count_small_c"] = cert.observed_max_count_small_c;
  j["table"] = ordered_json::array();
  for (const auto& row : cert.table)
    j["table"].push_back({{"c", row.c}, {"count", row.count}});
  j["witnesses"] = ordered_json::array();
  for (const auto& w : cert.witnesses) {
    ordered_json wj;
    wj["indices"] = w.indices;
    wj["coeffs"] = w.coeffs;
    wj["rhs"] = w.rhs;
    wj["n_at"] = w.n_at;
    j["witnesses"].push_back(std::move(wj));
  }
  j["params"] = params_to_json(cert.params);
  j["notes"] = cert.notes;
  return j;
}

ordered_json gamma_to_json(const GammaReport& report) {
  ordered_json j;
  j["gamma_kind"] = gamma_kind_name(report.kind);
  j["value"] = report.value;
  j["from_square_integral"] = report.from_square_integral;
  j["params"] = params_to_json(report.params);
  j["ladder"] = ordered_json::array();
  for (const auto& [n, v] : report.ladder)
    j["ladder"].push_back({{"N", n}, {"value", v}});
  j["pair_contributions"] = ordered_json::array();
  for (const auto& pc : report.pair_contributions)
    j["pair_contributions"].push_back({{"k", pc.k}, {"l", pc.l}, {"value", pc.value}});
  return j;
}

ordered_json trace_to_json(const LilTrace& trace) {
  ordered_json j;
  j["statistic"] = lil_statistic_name(trace.statistic);
  j["n_grid"] = trace.n_grid;
  j["running_max"] = trace.running_max;
  j["cells"] = ordered_json::array();
  for (const auto& cell : trace.cells)
    j["cells"].push_back(
        {{"source_id", cell.source_id}, {"N", cell.N}, {"value", cell.value}});
  return j;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw validation_error("double formatting failed");
  return std::string(buf, end);
}

std::string trace_to_csv(const LilTrace& trace) {
  std::string out = "source_id,N,value\n";
  for (const auto& cell : trace.cells) {
    out += cell.source_id;
    out += ',';
    out += std::to_string(cell.N);
    out += ',';
    out += format_double(cell.value);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw validation_error("failed writing " + path.string());
}

void write_json_file(const std::filesystem::path& path, const ordered_json& j) {
  write_text_file(path, j.dump(2));
}

ordered_json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open " + path.string());
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw validation_error(path.string() + ": " + e.what());
  }
}

ordered_json collate_report(const std::vector<std::filesystem::path>& inputs) {
  if (inputs.empty()) throw validation_error("report needs at least one input");
  ordered_json entries = ordered_json::array();
  for (const auto& path : inputs) {
    ordered_json j = read_json_file(path);
    if (!j.contains("artifact_version") || !j.contains("kind"))
      throw validation_error(path.string() + ": missing artifact envelope");
    if (j["artifact_version"] != kArtifactVersion)
      throw validation_error(path.string() + ": artifact_version " +
                             j["artifact_version"].dump() + " does not match " +
                             std::to_string(kArtifactVersion));
    ordered_json entry;
    entry["path"] = path.string();
    entry["kind"] = j["kind"];
    entry["experiment_id"] = j.value("experiment_id", "");
    ordered_json highlights = ordered_json::object();
    for (const char* key : {"verdict", "observed_max_count", "value", "gamma_kind",
                            "condition", "statistic", "running_max"})
      if (j.contains(key)) highlights[key] = j[key];
    entry["highlights"] = std::move(highlights);
    entries.push_back(std::move(entry));
  }
  ordered_json config;
  config["inputs"] = ordered_json::array();
  for (const auto& path : inputs) config["inputs"].push_back(path.string());
  ordered_json report = artifact_envelope("report", config);
  report["entries"] = std::move(entries);
  return report;
}

std::string report_to_markdown(const ordered_json& report) {
  std::string md = "# Artifact report\n\n";
  md += "| path | kind | experiment_id | highlights |\n";
  md += "| --- | --- | --- | --- |\n";
  for (const auto& entry : report.at("entries")) {
    std::string highlights;
    for (auto it = entry.at("highlights").begin(); it != entry.at("highlights").end();
         ++it) {
      if (!highlights.empty()) highlights += ", ";
      highlights += it.key() + "=" +
                    (it.value().is_string() ? it.value().get<std::string>()
                                            : it.value().dump());
    }
    md += "| " + entry.at("path").get<std::string>() + " | " +
          entry.at("kind").get<std::string>() + " | " +
          entry.at("experiment_id").get<std::string>() + " | " + highlights + " |\n";
  }
  return md;
}

}  // namespace lacunary
