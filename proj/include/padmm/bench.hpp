#pragma once

// Run orchestration for the command-line tool: one config, theta sweeps, and
// re-certification of a stored trace.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "padmm/io.hpp"

namespace padmm {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,             // converged and every check passed
  kExitRuntime = 1,        // inner solver failure, divergence, or I/O error
  kExitCheckFailed = 2,    // converged but a certificate check failed
  kExitIterationCap = 3,   // stopped at max_iters
  kExitConfig = 4,         // configuration, assumption, or usage error
};

struct RunArtifacts {
  int exit_code = kExitConfig;
  std::string message;   // diagnostics for standard error
  std::optional<RunResult> result;
  std::optional<Certificate> certificate;
  std::string trace_csv;
  Json report;
};

int exit_code_for(const RunResult& result, const std::optional<Certificate>& cert);

/// Builds the instance, validates it, runs and certifies. Never throws for
/// library errors; they are mapped to exit codes. Artifacts are not written.
RunArtifacts execute(const RunConfigFile& cfg);

/// Loads, executes, and writes whichever outputs the config names.
RunArtifacts run_config(const std::filesystem::path& path);

struct SweepRow {
  double theta = 0.0;
  int exit_code = kExitConfig;
  std::string outcome;
  int iterations = 0;
  double res_primal = 0.0;
  double res_dual_y = 0.0;
  double res_dual_x = 0.0;
  double beta = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  bool certified = false;
  std::string error;
};

/// One run per theta with beta re-derived (auto) per theta; rows sorted by theta.
/// Runs use up to `workers` threads; per-run errors land in the row.
std::vector<SweepRow> theta_sweep(const RunConfigFile& base, std::vector<double> thetas,
                                  int workers = 1);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Worker count from PADMM_WORKERS (default 1).
int workers_from_env();

struct TraceCertification {
  int exit_code = kExitConfig;
  std::string message;
  bool trace_matches = false;
  int rows_compared = 0;
  double worst_mismatch = 0.0;    // relative
  bool csv_merit_monotone = false;
  std::optional<Certificate> certificate;
  Json document;
};

/// Re-runs the config, compares the stored trace against the re-run, checks
/// merit monotonicity directly on the CSV, and certifies the re-run.
TraceCertification certify_trace(const std::filesystem::path& csv_path,
                                 const std::filesystem::path& config_path);

}  // namespace padmm
