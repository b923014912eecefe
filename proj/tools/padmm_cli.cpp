// padmm: run, sweep, generate and certify proximal ADMM experiments.
//
// Exit codes: 0 converged and certified, 1 runtime failure, 2 a check failed,
// 3 iteration cap, 4 configuration or usage error.

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padmm/bench.hpp"
#include "padmm/error.hpp"

using namespace padmm;

namespace {

int cmd_run(const std::string& config, bool print_report) {
  RunArtifacts a = run_config(config);
  if (!a.message.empty()) {
    std::cerr << a.message;
    if (a.message.back() != '\n') std::cerr << "\n";
  }
  if (print_report && a.result) std::cout << a.report.dump(2) << "\n";
  return a.exit_code;
}

int cmd_sweep(const std::string& config, const std::vector<double>& thetas,
              const std::string& out) {
  RunConfigFile cfg;
  try {
    cfg = load_run_config(config);
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntime;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  const auto rows = theta_sweep(cfg, thetas, workers_from_env());
  const std::string table = sweep_csv(rows);
  if (out.empty()) {
    std::cout << table;
  } else {
    try {
      write_text(out, table);
    } catch (const IoError& e) {
      std::cerr << e.what() << "\n";
      return kExitRuntime;
    }
  }
  // Per-run status is in the rows; the process reports the worst of them.
  int code = kExitOk;
  for (const auto& r : rows) {
    if (r.exit_code != kExitOk) {
      std::cerr << "theta=" << r.theta << ": " << r.outcome
                << (r.error.empty() ? "" : " (" + r.error + ")") << "\n";
      code = std::max(code, r.exit_code);
    }
  }
  return code;
}

int cmd_gen(const std::string& family, int n, int p, int l, std::uint64_t seed,
            const std::string& b_mode, const std::string& out) {
  GeneratorSpec spec;
  spec.family = family;
  spec.n = n;
  spec.p = p;
  spec.l = l;
  spec.seed = seed;
  spec.params.b_mode = b_mode;
  try {
    const ProblemInstance inst = generate_instance(spec);
    const std::string doc = instance_to_json(inst).dump(2) + "\n";
    if (out.empty()) {
      std::cout << doc;
    } else {
      write_text(out, doc);
    }
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntime;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

int cmd_certify(const std::string& csv, const std::string& config) {
  TraceCertification tc = certify_trace(csv, config);
  if (!tc.message.empty()) std::cerr << tc.message << "\n";
  if (!tc.document.is_null()) std::cout << tc.document.dump(2) << "\n";
  return tc.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximal ADMM with over-relaxation: runs, sweeps and certificates"};
  app.require_subcommand(1);

  std::string config;
  bool print_report = false;
  auto* run = app.add_subcommand("run", "Run one configuration and write its artifacts");
  run->add_option("config", config, "Run configuration (JSON)")->required();
  run->add_flag("--print-report", print_report, "Print the report JSON to stdout");

  std::vector<double> thetas;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Compare step sizes theta on one configuration");
  sweep->add_option("config", config, "Base configuration (JSON)")->required();
  sweep->add_option("--theta", thetas, "Theta values in (0, 2)")->required()->expected(1, -1);
  sweep->add_option("--out", sweep_out, "Write the table here instead of stdout");

  std::string family, gen_out, b_mode = "full";
  int n = 1, p = 1, l = 1;
  std::uint64_t seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
  gen->add_option("family", family, "quad-quad | l0-ls | box-cos | sphere-quad")->required();
  gen->add_option("--n", n, "Dimension of x")->required();
  gen->add_option("--p", p, "Dimension of y")->required();
  gen->add_option("--l", l, "Number of constraints")->required();
  gen->add_option("--seed", seed, "Random seed")->required();
  gen->add_option("--b-mode", b_mode, "full | deficient");
  gen->add_option("--out", gen_out, "Output path (stdout when omitted)");

  std::string csv;
  auto* cert = app.add_subcommand("certify", "Re-check a stored trace against its config");
  cert->add_option("trace", csv, "Trace CSV")->required();
  cert->add_option("config", config, "Run configuration (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (*run) return cmd_run(config, print_report);
  if (*sweep) return cmd_sweep(config, thetas, sweep_out);
  if (*gen) return cmd_gen(family, n, p, l, seed, b_mode, gen_out);
  if (*cert) return cmd_certify(csv, config);
  return kExitConfig;
}
