#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/report.hpp"

namespace spde {

// Flat key = value experiment description. Numeric parameters are validated
// against the preconditions of the operations they feed; the seed is
// mandatory so every run is reproducible.
struct ExperimentConfig {
  std::string kind;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::map<std::string, double> params;

  double param(const std::string& key) const;
  std::string echo() const;  // canonical text form (round-trips through parse)
};

const std::vector<std::string>& experiment_kinds();

ExperimentConfig default_config(const std::string& kind, bool quick = false);
std::string print_config_text(const std::string& kind);

struct ConfigError {
  std::string field;
  std::string message;
};

struct ConfigParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<ConfigError> errors;
};

ConfigParseResult validate_config(const std::string& text);

ReportBundle run_experiment(const ExperimentConfig& config);

// Every experiment kind at quick scale plus the library property suites.
ReportBundle verify_all(bool quick);

// Writes report.csv (deterministic) and bundle.txt (summary with timing).
void write_bundle(const ReportBundle& bundle, const std::string& out_dir);

std::string library_version();

}  // namespace spde
