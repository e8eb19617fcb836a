#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lacunary/diophantine.hpp"
#include "lacunary/harmonic.hpp"
#include "lacunary/statistics.hpp"

namespace lacunary {

// Every artifact carries the same envelope so `report` can re-derive the
// provenance of any number: artifact_version, tool_version, kind, an id
// derived from the resolved config, and the config itself.
nlohmann::ordered_json artifact_envelope(const std::string& kind,
                                         const nlohmann::ordered_json& config);

std::string experiment_id(const std::string& kind, const nlohmann::ordered_json& config);

nlohmann::ordered_json certificate_to_json(const ConditionCertificate& cert);
nlohmann::ordered_json gamma_to_json(const GammaReport& report);
nlohmann::ordered_json trace_to_json(const LilTrace& trace);

// Fixed columns: source_id,N,value.  Doubles are shortest-round-trip.
std::string trace_to_csv(const LilTrace& trace);

std::string format_double(double v);

// Serialize with a trailing newline; byte-identical for identical content.
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& j);
nlohmann::ordered_json read_json_file(const std::filesystem::path& path);

// Collates artifact files into one summary.  Throws validation_error when an
// input is missing the envelope or carries a different artifact_version.
nlohmann::ordered_json collate_report(const std::vector<std::filesystem::path>& inputs);
std::string report_to_markdown(const nlohmann::ordered_json& report);

}  // namespace lacunary
