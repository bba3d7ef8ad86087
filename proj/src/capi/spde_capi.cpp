#include "spde/spde.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "core/experiment.hpp"

struct spde_config {
  spde::ExperimentConfig impl;
};

struct spde_report {
  spde::ReportBundle impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(std::string msg) { g_last_error = std::move(msg); }

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

spde_status guard_argument(bool ok, const char* what) {
  if (!ok) set_error(std::string("invalid argument: ") + what);
  return ok ? SPDE_OK : SPDE_ERR_ARGUMENT;
}

}  // namespace

extern "C" {

const char* spde_version(void) {
  static const std::string version = spde::library_version();
  return version.c_str();
}

const char* spde_last_error(void) { return g_last_error.c_str(); }

spde_status spde_config_parse(const char* text, spde_config** out) {
  if (auto rc = guard_argument(text && out, "spde_config_parse")) return rc;
  *out = nullptr;
  const auto result = spde::validate_config(text);
  if (!result.config) {
    std::ostringstream os;
    for (const auto& e : result.errors)
      os << e.field << ": " << e.message << "\n";
    set_error(os.str());
    return SPDE_ERR_CONFIG;
  }
  *out = new spde_config{*result.config};
  return SPDE_OK;
}

spde_status spde_config_parse_file(const char* path, spde_config** out) {
  if (auto rc = guard_argument(path && out, "spde_config_parse_file")) return rc;
  std::ifstream in(path);
  if (!in) {
    set_error(std::string("cannot open config file: ") + path);
    return SPDE_ERR_CONFIG;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return spde_config_parse(buffer.str().c_str(), out);
}

spde_status spde_config_default(const char* kind, int quick, spde_config** out) {
  if (auto rc = guard_argument(kind && out, "spde_config_default")) return rc;
  *out = nullptr;
  try {
    *out = new spde_config{spde::default_config(kind, quick != 0)};
    return SPDE_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SPDE_ERR_CONFIG;
  }
}

void spde_config_free(spde_config* config) { delete config; }

spde_status spde_config_text(const spde_config* config, char** out) {
  if (auto rc = guard_argument(config && out, "spde_config_text")) return rc;
  *out = dup_string(config->impl.echo());
  return *out ? SPDE_OK : SPDE_ERR_RUNTIME;
}

spde_status spde_config_template(const char* kind, char** out) {
  if (auto rc = guard_argument(kind && out, "spde_config_template")) return rc;
  try {
    *out = dup_string(spde::print_config_text(kind));
    return *out ? SPDE_OK : SPDE_ERR_RUNTIME;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SPDE_ERR_CONFIG;
  }
}

size_t spde_kind_count(void) { return spde::experiment_kinds().size(); }

const char* spde_kind_name(size_t index) {
  const auto& kinds = spde::experiment_kinds();
  return index < kinds.size() ? kinds[index].c_str() : nullptr;
}

void spde_string_free(char* str) { delete[] str; }

spde_status spde_run(const spde_config* config, spde_report** out) {
  if (auto rc = guard_argument(config && out, "spde_run")) return rc;
  *out = nullptr;
  try {
    auto* report = new spde_report{spde::run_experiment(config->impl)};
    *out = report;
    return report->impl.overall_pass() ? SPDE_OK : SPDE_CHECKS_FAILED;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SPDE_ERR_RUNTIME;
  }
}

spde_status spde_verify_all(int quick, spde_report** out) {
  if (auto rc = guard_argument(out != nullptr, "spde_verify_all")) return rc;
  *out = nullptr;
  try {
    auto* report = new spde_report{spde::verify_all(quick != 0)};
    *out = report;
    return report->impl.overall_pass() ? SPDE_OK : SPDE_CHECKS_FAILED;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SPDE_ERR_RUNTIME;
  }
}

void spde_report_free(spde_report* report) { delete report; }

size_t spde_report_row_count(const spde_report* report) {
  return report ? report->impl.rows.size() : 0;
}

spde_status spde_report_row(const spde_report* report, size_t index,
                            spde_row_view* out) {
  if (auto rc = guard_argument(report && out, "spde_report_row")) return rc;
  if (index >= report->impl.rows.size()) {
    set_error("row index out of range");
    return SPDE_ERR_ARGUMENT;
  }
  const auto& row = report->impl.rows[index];
  out->name = row.name.c_str();
  out->empirical = row.empirical;
  out->std_error = row.std_error;
  out->target = row.target;
  out->tolerance = row.tolerance;
  out->pass = row.pass ? 1 : 0;
  out->provenance = spde::provenance_name(row.provenance);
  return SPDE_OK;
}

int spde_report_overall_pass(const spde_report* report) {
  return report && report->impl.overall_pass() ? 1 : 0;
}

double spde_report_wall_seconds(const spde_report* report) {
  return report ? report->impl.wall_seconds : 0.0;
}

spde_status spde_report_csv(const spde_report* report, char** out) {
  if (auto rc = guard_argument(report && out, "spde_report_csv")) return rc;
  *out = dup_string(report->impl.to_csv());
  return *out ? SPDE_OK : SPDE_ERR_RUNTIME;
}

spde_status spde_report_summary(const spde_report* report, char** out) {
  if (auto rc = guard_argument(report && out, "spde_report_summary")) return rc;
  *out = dup_string(report->impl.summary_text());
  return *out ? SPDE_OK : SPDE_ERR_RUNTIME;
}

spde_status spde_report_write(const spde_report* report, const char* dir) {
  if (auto rc = guard_argument(report && dir, "spde_report_write")) return rc;
  try {
    spde::write_bundle(report->impl, dir);
    return SPDE_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SPDE_ERR_RUNTIME;
  }
}

}  // extern "C"
