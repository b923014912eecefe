#include "padmm/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "padmm/error.hpp"

namespace padmm {

namespace {

Json report_for(const RunResult& res, const std::optional<Certificate>& cert, double wall_s,
                const std::vector<std::string>& warnings) {
  const DerivedConstants& c = res.setup.constants;
  Json rep;
  rep["constants"] = constants_to_json(c);
  rep["outcome"] = to_string(res.outcome);
  rep["iterations"] = res.iterations;
  if (!res.message.empty()) rep["message"] = res.message;
  if (!res.trace.empty()) {
    const IterateRecord& last = res.trace.back();
    rep["final_residuals"] = {{"primal", real_json(last.res_primal)},
                              {"dual_y", real_json(last.res_dual_y)},
                              {"dual_x", real_json(last.res_dual_x)}};
    rep["final_merit"] = real_json(last.merit);
  }
  const int k_final = static_cast<int>(res.trace.size()) - 1;
  if (k_final >= 1) {
    const int j = best_iterate(res.trace, c, res.setup.G, k_final);
    const IterateRecord& best = res.trace[j];
    const RateBounds b = theoretical_rate_bounds(c, k_final);
    const double dxg = std::sqrt(std::max(0.0, best.dx.dot(res.setup.G * best.dx)));
    rep["best_iterate"] = {
        {"k", k_final},
        {"j", j},
        {"observed", {{"dx_G", real_json(dxg)},
                      {"dual", real_json(best.res_dual_y)},
                      {"primal", real_json(best.res_primal)}}},
        {"bound", {{"dx_G", real_json(b.dx_G)},
                   {"dual", real_json(b.dual)},
                   {"primal", real_json(b.primal)}}}};
  }
  if (cert) {
    rep["certificate"] = {{"checks_run", cert->checks.size()},
                          {"passed", cert->passed},
                          {"failed", cert->failed},
                          {"worst_margin", real_json(cert->worst_margin)},
                          {"worst_check", cert->worst_check},
                          {"corollary_regime", cert->corollary_regime}};
  } else {
    rep["certificate"] = nullptr;
  }
  rep["warnings"] = warnings;
  rep["wall_time_s"] = wall_s;
  return rep;
}

RunArtifacts ok_artifacts() {
  RunArtifacts a;
  a.exit_code = kExitOk;
  return a;
}

template <class Fn>
RunArtifacts guarded(Fn&& fn) {
  RunArtifacts out;
  try {
    return fn();
  } catch (const ConfigError& e) {
    out.exit_code = kExitConfig;
    out.message = std::string("configuration error: ") + e.what();
  } catch (const AssumptionError& e) {
    out.exit_code = kExitConfig;
    out.message = std::string("assumption violated: ") + e.what();
  } catch (const DomainError& e) {
    out.exit_code = kExitConfig;
    out.message = std::string("invalid parameter: ") + e.what();
  } catch (const ContractError& e) {
    out.exit_code = kExitConfig;
    out.message = std::string("invalid input: ") + e.what();
  } catch (const IoError& e) {
    out.exit_code = kExitRuntime;
    out.message = std::string("I/O error: ") + e.what();
  } catch (const Error& e) {
    out.exit_code = kExitRuntime;
    out.message = std::string("error: ") + e.what();
  } catch (const std::exception& e) {
    out.exit_code = kExitRuntime;
    out.message = std::string("unexpected error: ") + e.what();
  }
  return out;
}

}  // namespace

int exit_code_for(const RunResult& result, const std::optional<Certificate>& cert) {
  switch (result.outcome) {
    case Outcome::Converged:
      return (cert && !cert->all_pass()) ? kExitCheckFailed : kExitOk;
    case Outcome::IterationCap:
      return kExitIterationCap;
    case Outcome::Error:
      return kExitRuntime;
  }
  return kExitRuntime;
}

RunArtifacts execute(const RunConfigFile& cfg) {
  return guarded([&] {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;
    const ProblemInstance inst = build_instance(cfg);
    if (!cfg.generator) {
      const ValidationReport rep = validate_assumptions(inst);
      if (!rep.all_pass()) throw AssumptionError(rep.summary());
    }
    std::string warning;
    const StartPoint start = resolve_start(inst, cfg.start, &warning);
    if (!warning.empty()) warnings.push_back(warning);

    RunArtifacts out;
    RunResult res = run(inst, cfg.solver, start);
    if (cfg.solver.certify && res.trace.size() > 1) {
      out.certificate = certify(inst, cfg.solver, res);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.exit_code = exit_code_for(res, out.certificate);
    out.trace_csv = trace_csv(res.trace);
    out.report = report_for(res, out.certificate, wall, warnings);
    for (const auto& w : warnings) out.message += "warning: " + w + "\n";
    if (!res.message.empty()) out.message += res.message + "\n";
    if (out.exit_code == kExitCheckFailed) {
      out.message += "certificate failed: " + std::to_string(out.certificate->failed) +
                     " check(s), worst " + out.certificate->worst_check + "\n";
    } else if (out.exit_code == kExitIterationCap) {
      out.message += "iteration cap reached before rho\n";
    }
    out.result = std::move(res);
    return out;
  });
}

RunArtifacts run_config(const std::filesystem::path& path) {
  std::optional<RunConfigFile> cfg;
  RunArtifacts out = guarded([&] {
    cfg = load_run_config(path);
    return execute(*cfg);
  });
  if (!out.result || !cfg) return out;
  RunArtifacts written = guarded([&] {
    if (cfg->trace_path) write_text(*cfg->trace_path, out.trace_csv);
    if (cfg->certificate_path) {
      const Json doc = out.certificate ? certificate_to_json(*out.certificate) : Json(nullptr);
      write_text(*cfg->certificate_path, doc.dump(2) + "\n");
    }
    if (cfg->report_path) write_text(*cfg->report_path, out.report.dump(2) + "\n");
    return ok_artifacts();
  });
  if (written.exit_code != kExitOk) {
    out.exit_code = written.exit_code;
    out.message += written.message + "\n";
  }
  return out;
}

// --- sweep ------------------------------------------------------------------------

int workers_from_env() {
  const char* v = std::getenv("PADMM_WORKERS");
  if (!v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1) return 1;
  return static_cast<int>(std::min<long>(n, 256));
}

std::vector<SweepRow> theta_sweep(const RunConfigFile& base, std::vector<double> thetas,
                                  int workers) {
  std::sort(thetas.begin(), thetas.end());
  std::vector<SweepRow> rows(thetas.size());
  std::optional<ProblemInstance> shared;
  std::string build_error;
  {
    RunArtifacts probe = guarded([&] {
      shared = build_instance(base);
      if (!base.generator) {
        const ValidationReport rep = validate_assumptions(*shared);
        if (!rep.all_pass()) throw AssumptionError(rep.summary());
      }
      return ok_artifacts();
    });
    if (probe.exit_code != kExitOk) build_error = probe.message;
  }

  auto run_one = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.theta = thetas[i];
    if (!shared) {
      row.exit_code = kExitConfig;
      row.outcome = "error";
      row.error = build_error;
      return;
    }
    SolverConfig cfg = base.solver;
    cfg.theta = thetas[i];
    cfg.beta = std::nullopt;
    RunArtifacts a = guarded([&] {
      if (!(cfg.theta > 0.0 && cfg.theta < 2.0)) throw ConfigError("theta must lie in (0, 2)");
      RunArtifacts out;
      const StartPoint start = resolve_start(*shared, base.start);
      RunResult res = run(*shared, cfg, start);
      if (cfg.certify && res.trace.size() > 1) out.certificate = certify(*shared, cfg, res);
      out.exit_code = exit_code_for(res, out.certificate);
      out.result = std::move(res);
      return out;
    });
    row.exit_code = a.exit_code;
    if (!a.result) {
      row.outcome = "error";
      row.error = a.message;
      return;
    }
    const RunResult& res = *a.result;
    row.outcome = to_string(res.outcome);
    row.iterations = res.iterations;
    const IterateRecord& last = res.trace.back();
    row.res_primal = last.res_primal;
    row.res_dual_y = last.res_dual_y;
    row.res_dual_x = last.res_dual_x;
    row.beta = res.setup.constants.beta;
    row.delta1 = res.setup.constants.delta1;
    row.delta2 = res.setup.constants.delta2;
    row.certified = a.certificate && a.certificate->all_pass();
    row.error = res.message;
  };

  const int n_workers = std::max(1, std::min<int>(workers, static_cast<int>(thetas.size())));
  if (n_workers == 1) {
    for (std::size_t i = 0; i < thetas.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < thetas.size(); i = next++) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "theta,outcome,exit_code,iterations,res_primal,res_dual_y,res_dual_x,beta,delta1,delta2,"
      "certified,error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), '"', '\'');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out += format_real(r.theta) + "," + r.outcome + "," + std::to_string(r.exit_code) + "," +
           std::to_string(r.iterations) + "," + format_real(r.res_primal) + "," +
           format_real(r.res_dual_y) + "," + format_real(r.res_dual_x) + "," +
           format_real(r.beta) + "," + format_real(r.delta1) + "," + format_real(r.delta2) + "," +
           (r.certified ? "true" : "false") + ",\"" + err + "\"\n";
  }
  return out;
}

// --- certify a stored trace -----------------------------------------------------------

TraceCertification certify_trace(const std::filesystem::path& csv_path,
                                 const std::filesystem::path& config_path) {
  TraceCertification tc;
  std::vector<TraceRow> stored;
  std::optional<RunConfigFile> cfg;
  RunArtifacts loaded = guarded([&] {
    stored = read_trace_csv(csv_path);
    cfg = load_run_config(config_path);
    if (stored.empty()) throw ConfigError("trace CSV has no rows");
    return ok_artifacts();
  });
  if (loaded.exit_code != kExitOk) {
    tc.exit_code = loaded.exit_code;
    tc.message = loaded.message;
    return tc;
  }

  // Merit monotonicity and nonnegativity straight from the stored numbers.
  const double merit0 = stored.front().merit;
  const double tol = 1e-8 * (1.0 + std::abs(merit0));
  tc.csv_merit_monotone = true;
  for (std::size_t i = 0; i < stored.size(); ++i) {
    if (stored[i].merit < -tol) tc.csv_merit_monotone = false;
    if (i > 0 && stored[i].merit > stored[i - 1].merit + tol) tc.csv_merit_monotone = false;
  }

  cfg->solver.certify = true;
  RunArtifacts rerun = execute(*cfg);
  if (!rerun.result) {
    tc.exit_code = rerun.exit_code;
    tc.message = rerun.message;
    return tc;
  }
  const auto& trace = rerun.result->trace;
  tc.certificate = rerun.certificate;

  tc.trace_matches = stored.size() == trace.size();
  const std::size_t n = std::min(stored.size(), trace.size());
  for (std::size_t i = 0; i < n; ++i) {
    const TraceRow a = stored[i];
    const TraceRow b = trace_row(trace[i]);
    if (a.k != b.k) tc.trace_matches = false;
    const double pa[] = {a.res_primal, a.res_dual_y, a.res_dual_x, a.L_beta, a.delta_k, a.eta_k, a.merit};
    const double pb[] = {b.res_primal, b.res_dual_y, b.res_dual_x, b.L_beta, b.delta_k, b.eta_k, b.merit};
    for (int j = 0; j < 7; ++j) {
      const double rel = std::abs(pa[j] - pb[j]) / std::max(1.0, std::abs(pb[j]));
      tc.worst_mismatch = std::max(tc.worst_mismatch, rel);
    }
    ++tc.rows_compared;
  }
  if (tc.worst_mismatch > 1e-9) tc.trace_matches = false;

  const bool cert_ok = tc.certificate && tc.certificate->all_pass();
  if (!tc.trace_matches) {
    tc.exit_code = kExitCheckFailed;
    tc.message = "stored trace does not match a re-run of the config (worst relative mismatch " +
                 format_real(tc.worst_mismatch) + ")";
  } else if (!tc.csv_merit_monotone || !cert_ok) {
    tc.exit_code = kExitCheckFailed;
    tc.message = "certificate failed";
  } else {
    tc.exit_code = rerun.exit_code == kExitIterationCap ? kExitIterationCap : kExitOk;
  }

  tc.document = {{"trace_matches", tc.trace_matches},
                 {"rows_compared", tc.rows_compared},
                 {"worst_relative_mismatch", real_json(tc.worst_mismatch)},
                 {"csv_merit_monotone", tc.csv_merit_monotone},
                 {"certificate", tc.certificate ? certificate_to_json(*tc.certificate)
                                                : Json(nullptr)}};
  return tc;
}

}  // namespace padmm
