// Artifact envelopes, JSON/CSV serialization, and report collation.
#include <cctype>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "lacunary/artifacts.hpp"
#include "lacunary/common.hpp"

using namespace lacunary;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "lacunary_artifacts_test";
  fs::create_directories(dir);
  return dir;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

bool is_hex16(const std::string& s) {
  if (s.size() != 16) return false;
  for (char c : s)
    if (!std::isxdigit(static_cast<unsigned char>(c)) ||
        (std::isalpha(static_cast<unsigned char>(c)) && !std::islower(static_cast<unsigned char>(c))))
      return false;
  return true;
}

}  // namespace

TEST_CASE("artifact envelopes carry version, kind, id, and config") {
  ordered_json config{{"mode", "kac"}, {"base", 2}};
  ordered_json env = artifact_envelope("gamma", config);
  CHECK(env["artifact_version"] == kArtifactVersion);
  CHECK(env["artifact_version"] == 1);
  CHECK(env["tool_version"] == kToolVersion);
  CHECK(env["tool_version"] == "0.1.0");
  CHECK(env["kind"] == "gamma");
  CHECK(env["config"] == config);
  CHECK(is_hex16(env["experiment_id"].get<std::string>()));

  // The id is a pure function of kind and config.
  CHECK(env["experiment_id"] == experiment_id("gamma", config));
  CHECK(experiment_id("gamma", config) == experiment_id("gamma", config));
  CHECK(experiment_id("gamma", config) != experiment_id("certificate", config));
  ordered_json other = config;
  other["base"] = 3;
  CHECK(experiment_id("gamma", config) != experiment_id("gamma", other));
}

TEST_CASE("certificate_to_json spells out verdict, table, and witnesses") {
  ConditionCertificate cert;
  cert.kind = "b2_strong";
  cert.verdict = Verdict::consistent;
  cert.observed_max_count = 3;
  cert.observed_max_count_small_c = 2;
  cert.table.push_back({"6", 3});
  cert.table.push_back({"0", 1});
  TupleWitness w;
  w.indices = {1, 2};
  w.coeffs = {1, 1};
  w.rhs = "6";
  w.n_at = 4;
  cert.witnesses.push_back(w);
  cert.params["n_limit"] = "4";
  cert.notes = "scan complete";

  ordered_json j = certificate_to_json(cert);
  CHECK(j["condition"] == "b2_strong");
  CHECK(j["verdict"] == "consistent");
  CHECK(j["observed_max_count"] == 3);
  CHECK(j["observed_max_count_small_c"] == 2);
  REQUIRE(j["table"].size() == 2);
  CHECK(j["table"][0]["c"] == "6");
  CHECK(j["table"][0]["count"] == 3);
  REQUIRE(j["witnesses"].size() == 1);
  CHECK(j["witnesses"][0]["indices"] == ordered_json::array({1, 2}));
  CHECK(j["witnesses"][0]["coeffs"] == ordered_json::array({1, 1}));
  CHECK(j["witnesses"][0]["rhs"] == "6");
  CHECK(j["witnesses"][0]["n_at"] == 4);
  CHECK(j["params"]["n_limit"] == "4");
  CHECK(j["notes"] == "scan complete");
}

TEST_CASE("gamma_to_json serializes the ladder and pair contributions") {
  GammaReport report;
  report.kind = GammaKind::empirical;
  report.value = 1.5;
  report.from_square_integral = true;
  report.params["N"] = "10";

  ordered_json bare = gamma_to_json(report);
  CHECK(bare["gamma_kind"] == "empirical");
  CHECK(bare["value"] == 1.5);
  CHECK(bare["from_square_integral"] == true);
  CHECK(bare["ladder"].is_array());
  CHECK(bare["ladder"].empty());
  CHECK(bare["pair_contributions"].empty());

  report.ladder = {{10, 1.9}, {100, 1.99}};
  report.pair_contributions.push_back({1, 2, 0.5});
  ordered_json full = gamma_to_json(report);
  REQUIRE(full["ladder"].size() == 2);
  CHECK(full["ladder"][0]["N"] == 10);
  CHECK(full["ladder"][0]["value"] == 1.9);
  CHECK(full["ladder"][1]["N"] == 100);
  REQUIRE(full["pair_contributions"].size() == 1);
  CHECK(full["pair_contributions"][0]["k"] == 1);
  CHECK(full["pair_contributions"][0]["l"] == 2);
  CHECK(full["pair_contributions"][0]["value"] == 0.5);
}

TEST_CASE("traces serialize to JSON and fixed-column CSV") {
  LilTrace trace;
  trace.statistic = LilStatistic::discrepancy_lil;
  trace.n_grid = {16, 32};
  trace.running_max = 0.5;
  trace.cells.push_back({"x:1", 16, 0.5});
  trace.cells.push_back({"seed:3", 32, 0.25});

  ordered_json j = trace_to_json(trace);
  CHECK(j["statistic"] == "discrepancy_lil");
  CHECK(j["n_grid"] == ordered_json::array({16, 32}));
  CHECK(j["running_max"] == 0.5);
  REQUIRE(j["cells"].size() == 2);
  CHECK(j["cells"][0]["source_id"] == "x:1");
  CHECK(j["cells"][0]["N"] == 16);
  CHECK(j["cells"][0]["value"] == 0.5);

  CHECK(trace_to_csv(trace) == "source_id,N,value\nx:1,16,0.5\nseed:3,32,0.25\n");
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-1.25) == "-1.25");
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    double v = unif(rng);
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("write_text_file normalizes the trailing newline") {
  fs::path dir = scratch_dir();
  fs::path p = dir / "text.txt";
  write_text_file(p, "abc");
  CHECK(read_bytes(p) == "abc\n");
  write_text_file(p, "abc\n");
  CHECK(read_bytes(p) == "abc\n");  // byte-identical rewrite
  write_text_file(p, "");
  CHECK(read_bytes(p) == "");

  CHECK_THROWS_AS(write_text_file(dir / "no" / "such" / "dir.txt", "x"),
                  validation_error);
}

TEST_CASE("JSON files round-trip and reject malformed input") {
  fs::path dir = scratch_dir();
  fs::path p = dir / "artifact.json";
  ordered_json j{{"a", 1}, {"b", "two"}, {"c", ordered_json::array({1, 2, 3})}};
  write_json_file(p, j);
  CHECK(read_json_file(p) == j);
  std::string bytes = read_bytes(p);
  CHECK(!bytes.empty());
  CHECK(bytes.back() == '\n');

  CHECK_THROWS_AS(read_json_file(dir / "missing.json"), validation_error);
  fs::path bad = dir / "bad.json";
  write_text_file(bad, "{ not json");
  CHECK_THROWS_WITH_AS(read_json_file(bad), doctest::Contains("bad.json"),
                       validation_error);
}

TEST_CASE("collate_report summarizes envelopes and rejects mismatches") {
  fs::path dir = scratch_dir();
  ordered_json gamma_cfg{{"mode", "kac"}};
  ordered_json g = artifact_envelope("gamma", gamma_cfg);
  g["gamma_kind"] = "kac";
  g["value"] = 2.0;
  fs::path gp = dir / "gamma.json";
  write_json_file(gp, g);

  ordered_json cert_cfg{{"mode", "b2"}};
  ordered_json c = artifact_envelope("certificate", cert_cfg);
  c["condition"] = "b2_strong";
  c["verdict"] = "consistent";
  c["observed_max_count"] = 2;
  fs::path cp = dir / "cert.json";
  write_json_file(cp, c);

  ordered_json report = collate_report({gp, cp});
  CHECK(report["kind"] == "report");
  CHECK(report["artifact_version"] == kArtifactVersion);
  REQUIRE(report["entries"].size() == 2);
  CHECK(report["entries"][0]["path"] == gp.string());
  CHECK(report["entries"][0]["kind"] == "gamma");
  CHECK(report["entries"][0]["experiment_id"] == g["experiment_id"]);
  CHECK(report["entries"][0]["highlights"]["value"] == 2.0);
  CHECK(report["entries"][0]["highlights"]["gamma_kind"] == "kac");
  CHECK(report["entries"][1]["highlights"]["verdict"] == "consistent");
  CHECK(report["entries"][1]["highlights"]["observed_max_count"] == 2);

  CHECK_THROWS_AS(collate_report({}), validation_error);

  ordered_json naked{{"value", 1}};
  fs::path np = dir / "naked.json";
  write_json_file(np, naked);
  CHECK_THROWS_WITH_AS(collate_report({np}), doctest::Contains("envelope"),
                       validation_error);

  ordered_json old = g;
  old["artifact_version"] = 999;
  fs::path op = dir / "old.json";
  write_json_file(op, old);
  CHECK_THROWS_WITH_AS(collate_report({op}), doctest::Contains("artifact_version"),
                       validation_error);
}

TEST_CASE("report_to_markdown emits one table row per entry") {
  fs::path dir = scratch_dir();
  ordered_json cfg{{"mode", "kac"}};
  ordered_json g = artifact_envelope("gamma", cfg);
  g["value"] = 2.0;
  fs::path gp = dir / "md_gamma.json";
  write_json_file(gp, g);

  std::string md = report_to_markdown(collate_report({gp}));
  CHECK(md.find("| path | kind | experiment_id | highlights |") != std::string::npos);
  CHECK(md.find(gp.string()) != std::string::npos);
  CHECK(md.find("value=2") != std::string::npos);
}
