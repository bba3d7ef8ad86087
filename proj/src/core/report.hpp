#pragma once

#include <string>
#include <vector>

namespace spde {

enum class Provenance { PaperFormula, DerivedOracle, Trivial };

const char* provenance_name(Provenance p);

struct ReportRow {
  std::string name;
  double empirical = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  double tolerance = 0.0;  // |empirical - target| <= tolerance when > 0
  bool pass = false;
  Provenance provenance = Provenance::Trivial;
};

ReportRow check_row(const std::string& name, double empirical, double target,
                    double tolerance, Provenance prov, double std_error = 0.0);
ReportRow flag_row(const std::string& name, bool ok, Provenance prov,
                   double empirical = 0.0, double target = 0.0);

struct ReportBundle {
  std::string kind;
  std::string config_echo;
  std::string version;
  double wall_seconds = 0.0;
  std::vector<ReportRow> rows;

  bool overall_pass() const;
  // Deterministic CSV: header + one row per check, floats at 17 significant
  // digits, LF line endings. Timing is deliberately not part of the CSV.
  std::string to_csv() const;
  std::string summary_text() const;
};

std::string format_double(double x);  // %.17g

}  // namespace spde
