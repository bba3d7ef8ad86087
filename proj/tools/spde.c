/*
 * spde - command line front end of the spdelab shared library.
 *
 *   spde run <config-file>        run one experiment described by a config
 *   spde verify-all [--quick]     run the whole verification battery
 *   spde print-config <kind>      print a commented config template
 *
 * Exit codes: 0 all checks passed, 1 at least one check failed,
 * 2 configuration error. SPDE_THREADS caps worker threads.
 */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "spde/spde.h"

static void usage(FILE* out) {
  fprintf(out,
          "usage:\n"
          "  spde run <config-file> [--out <dir>] [--csv]\n"
          "  spde verify-all [--quick] [--out <dir>]\n"
          "  spde print-config <kind>\n"
          "  spde list-kinds\n"
          "\n"
          "exit codes: 0 = all checks pass, 1 = some check failed, 2 = config error\n");
}

static void print_report(spde_report* report, int want_csv) {
  if (want_csv) {
    char* csv = NULL;
    if (spde_report_csv(report, &csv) == SPDE_OK) {
      fputs(csv, stdout);
      spde_string_free(csv);
    }
    return;
  }
  char* summary = NULL;
  if (spde_report_summary(report, &summary) == SPDE_OK) {
    fputs(summary, stdout);
    spde_string_free(summary);
  }
  fprintf(stdout, "# wall: %.2fs\n", spde_report_wall_seconds(report));
}

static int finish(spde_status rc, spde_report* report, const char* out_dir,
                  int want_csv) {
  if (rc == SPDE_ERR_CONFIG) {
    fprintf(stderr, "config error:\n%s", spde_last_error());
    return 2;
  }
  if (rc != SPDE_OK && rc != SPDE_CHECKS_FAILED) {
    fprintf(stderr, "error: %s\n", spde_last_error());
    return 2;
  }
  if (out_dir != NULL) {
    if (spde_report_write(report, out_dir) != SPDE_OK)
      fprintf(stderr, "warning: could not write reports: %s\n",
              spde_last_error());
  }
  print_report(report, want_csv);
  int pass = spde_report_overall_pass(report);
  spde_report_free(report);
  return pass ? 0 : 1;
}

static int cmd_run(int argc, char** argv) {
  const char* config_path = NULL;
  const char* out_dir = NULL;
  int want_csv = 0;
  for (int i = 0; i < argc; ++i) {
    if (strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
      out_dir = argv[++i];
    } else if (strcmp(argv[i], "--csv") == 0) {
      want_csv = 1;
    } else if (config_path == NULL) {
      config_path = argv[i];
    } else {
      usage(stderr);
      return 2;
    }
  }
  if (config_path == NULL) {
    usage(stderr);
    return 2;
  }

  spde_config* config = NULL;
  spde_status rc = spde_config_parse_file(config_path, &config);
  if (rc != SPDE_OK) {
    fprintf(stderr, "config error:\n%s", spde_last_error());
    return 2;
  }
  spde_report* report = NULL;
  rc = spde_run(config, &report);
  spde_config_free(config);
  return finish(rc, report, out_dir, want_csv);
}

static int cmd_verify_all(int argc, char** argv) {
  int quick = 0;
  const char* out_dir = NULL;
  for (int i = 0; i < argc; ++i) {
    if (strcmp(argv[i], "--quick") == 0) {
      quick = 1;
    } else if (strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
      out_dir = argv[++i];
    } else {
      usage(stderr);
      return 2;
    }
  }
  spde_report* report = NULL;
  spde_status rc = spde_verify_all(quick, &report);
  return finish(rc, report, out_dir, 0);
}

static int cmd_print_config(int argc, char** argv) {
  if (argc != 1) {
    usage(stderr);
    return 2;
  }
  char* text = NULL;
  if (spde_config_template(argv[0], &text) != SPDE_OK) {
    fprintf(stderr, "error: %s\n", spde_last_error());
    fprintf(stderr, "known kinds:\n");
    for (size_t i = 0; i < spde_kind_count(); ++i)
      fprintf(stderr, "  %s\n", spde_kind_name(i));
    return 2;
  }
  fputs(text, stdout);
  spde_string_free(text);
  return 0;
}

int main(int argc, char** argv) {
  if (argc < 2) {
    usage(stderr);
    return 2;
  }
  if (strcmp(argv[1], "run") == 0) return cmd_run(argc - 2, argv + 2);
  if (strcmp(argv[1], "verify-all") == 0)
    return cmd_verify_all(argc - 2, argv + 2);
  if (strcmp(argv[1], "print-config") == 0)
    return cmd_print_config(argc - 2, argv + 2);
  if (strcmp(argv[1], "list-kinds") == 0) {
    for (size_t i = 0; i < spde_kind_count(); ++i)
      printf("%s\n", spde_kind_name(i));
    return 0;
  }
  if (strcmp(argv[1], "--version") == 0) {
    printf("%s\n", spde_version());
    return 0;
  }
  if (strcmp(argv[1], "--help") == 0 || strcmp(argv[1], "-h") == 0) {
    usage(stdout);
    return 0;
  }
  usage(stderr);
  return 2;
}
