#pragma once

// JSON configuration and instance documents, CSV traces, certificate and
// report serialization. Reals are written so that they round-trip exactly.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "padmm/certifier.hpp"
#include "padmm/generators.hpp"
#include "padmm/solver.hpp"

namespace padmm {

using Json = nlohmann::json;

// --- instances --------------------------------------------------------------

Json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const Json& doc);

Json generator_spec_to_json(const GeneratorSpec& spec);
GeneratorSpec generator_spec_from_json(const Json& doc);

// --- run configuration ------------------------------------------------------

struct StartSpec {
  enum class Policy { Explicit, Zeros, ConsistentMultiplier };
  Policy policy = Policy::Zeros;
  std::optional<Vector> x0;
  std::optional<Vector> y0;
  std::optional<Vector> lambda0;  // Explicit only
};

struct RunConfigFile {
  // Exactly one of the two instance sources is set.
  std::optional<GeneratorSpec> generator;
  std::optional<Json> inline_instance;
  SolverConfig solver;
  StartSpec start;
  // Output paths, already resolved against the config file's directory.
  std::optional<std::filesystem::path> trace_path;
  std::optional<std::filesystem::path> certificate_path;
  std::optional<std::filesystem::path> report_path;
};

/// Throws ConfigError on schema violations (unknown keys included).
RunConfigFile run_config_from_json(const Json& doc,
                                   const std::filesystem::path& base_dir = {});
RunConfigFile load_run_config(const std::filesystem::path& path);
Json run_config_to_json(const RunConfigFile& cfg);

SolverConfig solver_config_from_json(const Json& doc);
Json solver_config_to_json(const SolverConfig& cfg);

ProblemInstance build_instance(const RunConfigFile& cfg);

/// Turns a start policy into a concrete (x0, y0, lambda0). x0 is moved into
/// dom f via the prox when needed. A least-squares multiplier that does not
/// solve B^T lambda = grad g(y0) is kept and reported through `warning`.
StartPoint resolve_start(const ProblemInstance& inst, const StartSpec& spec,
                         std::string* warning = nullptr);

// --- traces -----------------------------------------------------------------

inline constexpr const char* kTraceHeader =
    "k,res_primal,res_dual_y,res_dual_x,L_beta,delta_k,eta_k,merit";

struct TraceRow {
  int k = 0;
  double res_primal = 0.0;
  double res_dual_y = 0.0;
  double res_dual_x = 0.0;
  double L_beta = 0.0;
  double delta_k = 0.0;
  double eta_k = 0.0;
  double merit = 0.0;
};

TraceRow trace_row(const IterateRecord& r);
std::string trace_csv(const std::vector<IterateRecord>& trace);
std::vector<TraceRow> parse_trace_csv(const std::string& text);
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

// --- documents --------------------------------------------------------------

std::string format_real(double v);  // %.17g
Json real_json(double v);           // null for non-finite values

Json constants_to_json(const DerivedConstants& c);
Json certificate_to_json(const Certificate& cert);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace padmm
