#pragma once

#include "nmc/code.hpp"
#include "nmc/config.hpp"
#include "nmc/spectral.hpp"
#include "nmc/tamper.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nmc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchemaVersion = "1.0";

/// Top-level keys whose values legitimately differ between identical runs.
inline constexpr const char* kVolatileReportKeys[] = {"timestamp", "runtime_ms"};

Json to_json(const FlipReport& r);
Json to_json(const ExpansionCert& c);
Json to_json(const Spectrum& s);
Json to_json(const FigureOfMerit& f);
Json to_json(const ExperimentConfig& c);

/// Schema violations, empty if the report conforms to kReportSchemaVersion.
std::vector<std::string> validate_report(const Json& report);

/// Report without its volatile keys, for determinism comparisons.
Json stable_part(const Json& report);

/// Flat CSV projection of the report's flip results: header plus one row each.
void write_flip_csv(std::ostream& out, const Json& report);

// Commands. Each returns a complete report document.
Json cmd_graph_info(const ExperimentConfig& config);
Json cmd_spectrum(const ExperimentConfig& config);
Json cmd_tamper(const ExperimentConfig& config);
Json cmd_mixing(const ExperimentConfig& config);

Codeword cmd_encode(const ExperimentConfig& config, Bit bit);
Bit cmd_decode(const ExperimentConfig& config, VertexId left, VertexId right);

}  // namespace nmc
