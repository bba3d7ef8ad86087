#include "core/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace spde {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::PaperFormula:
      return "paper-formula";
    case Provenance::DerivedOracle:
      return "derived-oracle";
    default:
      return "trivial";
  }
}

ReportRow check_row(const std::string& name, double empirical, double target,
                    double tolerance, Provenance prov, double std_error) {
  ReportRow r;
  r.name = name;
  r.empirical = empirical;
  r.std_error = std_error;
  r.target = target;
  r.tolerance = tolerance;
  r.pass = std::isfinite(empirical) && std::abs(empirical - target) <= tolerance;
  r.provenance = prov;
  return r;
}

ReportRow flag_row(const std::string& name, bool ok, Provenance prov,
                   double empirical, double target) {
  ReportRow r;
  r.name = name;
  r.empirical = empirical;
  r.target = target;
  r.tolerance = 0.0;
  r.pass = ok;
  r.provenance = prov;
  return r;
}

bool ReportBundle::overall_pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string ReportBundle::to_csv() const {
  std::ostringstream os;
  os << "name,empirical,std_error,target,tolerance,pass,provenance\n";
  for (const auto& r : rows) {
    os << r.name << ',' << format_double(r.empirical) << ','
       << format_double(r.std_error) << ',' << format_double(r.target) << ','
       << format_double(r.tolerance) << ',' << (r.pass ? 1 : 0) << ','
       << provenance_name(r.provenance) << '\n';
  }
  return os.str();
}

std::string ReportBundle::summary_text() const {
  std::ostringstream os;
  os << "# " << version << "\n";
  os << "# kind: " << kind << "\n";
  os << "# wall_seconds: " << wall_seconds << "\n";
  os << "# config:\n";
  std::istringstream echo(config_echo);
  std::string line;
  while (std::getline(echo, line)) os << "#   " << line << "\n";
  for (const auto& r : rows)
    os << (r.pass ? "PASS " : "FAIL ") << r.name
       << "  empirical=" << format_double(r.empirical)
       << " target=" << format_double(r.target)
       << " tol=" << format_double(r.tolerance) << " ["
       << provenance_name(r.provenance) << "]\n";
  os << (overall_pass() ? "OVERALL PASS" : "OVERALL FAIL") << "\n";
  return os.str();
}

}  // namespace spde
