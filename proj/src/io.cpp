#include "padmm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "padmm/error.hpp"

namespace padmm {

namespace {

void require_keys(const Json& doc, const std::set<std::string>& allowed, const std::string& where) {
  if (!doc.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : doc.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
  }
}

const Json& need(const Json& doc, const std::string& key, const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError(where + ": missing '" + key + "'");
  return *it;
}

double as_real(const Json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + ": expected a number");
  return v.get<double>();
}

int as_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ConfigError(what + ": expected an integer");
  return v.get<int>();
}

Vector vector_from_json(const Json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + ": expected an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = as_real(v[i], what);
  }
  return out;
}

Matrix matrix_from_json(const Json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) throw ConfigError(what + ": expected a nested array");
  const std::size_t rows = v.size();
  if (!v[0].is_array()) throw ConfigError(what + ": expected a nested array");
  const std::size_t cols = v[0].size();
  Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) throw ConfigError(what + ": ragged rows");
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = as_real(v[i][j], what);
    }
  }
  return out;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

Json f_to_json(const NonsmoothOracle& f) {
  if (auto* q = dynamic_cast<const QuadraticFunction*>(&f)) {
    return {{"type", "quadratic"}, {"P", matrix_to_json(q->P())}, {"q", vector_to_json(q->q())}};
  }
  if (auto* box = dynamic_cast<const BoxIndicator*>(&f)) {
    return {{"type", "box"},
            {"lower", vector_to_json(box->lower())},
            {"upper", vector_to_json(box->upper())}};
  }
  if (auto* l0 = dynamic_cast<const L0Penalty*>(&f)) return {{"type", "l0"}, {"mu", l0->mu()}};
  if (dynamic_cast<const SphereIndicator*>(&f)) return {{"type", "sphere"}};
  throw ConfigError("cannot serialize f of family '" + f.family() + "'");
}

std::shared_ptr<const NonsmoothOracle> f_from_json(const Json& doc) {
  const std::string where = "instance.f";
  const std::string type = need(doc, "type", where).get<std::string>();
  if (type == "quadratic") {
    require_keys(doc, {"type", "P", "q"}, where);
    return std::make_shared<QuadraticFunction>(matrix_from_json(need(doc, "P", where), "f.P"),
                                               vector_from_json(need(doc, "q", where), "f.q"));
  }
  if (type == "box") {
    require_keys(doc, {"type", "lower", "upper"}, where);
    return std::make_shared<BoxIndicator>(vector_from_json(need(doc, "lower", where), "f.lower"),
                                          vector_from_json(need(doc, "upper", where), "f.upper"));
  }
  if (type == "l0") {
    require_keys(doc, {"type", "mu"}, where);
    return std::make_shared<L0Penalty>(as_real(need(doc, "mu", where), "f.mu"));
  }
  if (type == "sphere") {
    require_keys(doc, {"type"}, where);
    return std::make_shared<SphereIndicator>();
  }
  throw ConfigError(where + ": unknown type '" + type + "'");
}

Json g_to_json(const SmoothOracle& g) {
  if (auto* q = dynamic_cast<const QuadraticSmooth*>(&g)) {
    return {{"type", "quadratic"},
            {"Q", matrix_to_json(q->Q())},
            {"c", vector_to_json(q->c())},
            {"L", g.lipschitz()},
            {"m", g.weak_convexity()}};
  }
  if (auto* c = dynamic_cast<const CosineSmooth*>(&g)) {
    return {{"type", "cosine"},
            {"dim", c->dim()},
            {"amplitude", c->amplitude()},
            {"L", g.lipschitz()},
            {"m", g.weak_convexity()}};
  }
  throw ConfigError("cannot serialize g of family '" + g.family() + "'");
}

std::optional<double> optional_real(const Json& doc, const std::string& key,
                                    const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  return as_real(*it, where + "." + key);
}

std::shared_ptr<const SmoothOracle> g_from_json(const Json& doc) {
  const std::string where = "instance.g";
  const std::string type = need(doc, "type", where).get<std::string>();
  if (type == "quadratic") {
    require_keys(doc, {"type", "Q", "c", "L", "m"}, where);
    return std::make_shared<QuadraticSmooth>(matrix_from_json(need(doc, "Q", where), "g.Q"),
                                             vector_from_json(need(doc, "c", where), "g.c"),
                                             optional_real(doc, "L", where),
                                             optional_real(doc, "m", where));
  }
  if (type == "cosine") {
    require_keys(doc, {"type", "dim", "amplitude", "L", "m"}, where);
    return std::make_shared<CosineSmooth>(as_int(need(doc, "dim", where), "g.dim"),
                                          as_real(need(doc, "amplitude", where), "g.amplitude"),
                                          optional_real(doc, "L", where),
                                          optional_real(doc, "m", where));
  }
  throw ConfigError(where + ": unknown type '" + type + "'");
}

Json g_spec_to_json(const GSpec& g) {
  switch (g.kind) {
    case GSpec::Kind::Zero:
      return "zero";
    case GSpec::Kind::Linearized:
      if (g.alpha) return {{"type", "linearized"}, {"alpha", *g.alpha}};
      return "linearized";
    case GSpec::Kind::Explicit:
      return {{"type", "explicit"}, {"matrix", matrix_to_json(g.matrix)}};
  }
  return "zero";
}

GSpec g_spec_from_json(const Json& doc) {
  const std::string where = "solver.G";
  if (doc.is_string()) {
    const std::string s = doc.get<std::string>();
    if (s == "zero") return GSpec::zero();
    if (s == "linearized") return GSpec::linearized();
    throw ConfigError(where + ": expected zero, linearized, or an object");
  }
  if (doc.is_array()) return GSpec::explicit_matrix(matrix_from_json(doc, where));
  require_keys(doc, {"type", "alpha", "matrix"}, where);
  const std::string type = need(doc, "type", where).get<std::string>();
  if (type == "zero") return GSpec::zero();
  if (type == "linearized") return GSpec::linearized(optional_real(doc, "alpha", where));
  if (type == "explicit") {
    return GSpec::explicit_matrix(matrix_from_json(need(doc, "matrix", where), where + ".matrix"));
  }
  throw ConfigError(where + ": unknown type '" + type + "'");
}

std::filesystem::path resolve_path(const std::filesystem::path& base, const Json& v,
                                   const std::string& what) {
  if (!v.is_string()) throw ConfigError(what + ": expected a path string");
  std::filesystem::path p = v.get<std::string>();
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

}  // namespace

// --- instances ----------------------------------------------------------------

Json instance_to_json(const ProblemInstance& inst) {
  return {{"A", matrix_to_json(inst.A)},
          {"B", matrix_to_json(inst.B)},
          {"b", vector_to_json(inst.b)},
          {"f", f_to_json(*inst.f)},
          {"g", g_to_json(*inst.g)},
          {"beta_bar", inst.beta_bar},
          {"L_bar_lower", inst.L_bar_lower}};
}

ProblemInstance instance_from_json(const Json& doc) {
  const std::string where = "instance";
  require_keys(doc, {"A", "B", "b", "f", "g", "beta_bar", "L_bar_lower"}, where);
  ProblemInstance inst;
  inst.A = matrix_from_json(need(doc, "A", where), "instance.A");
  inst.B = matrix_from_json(need(doc, "B", where), "instance.B");
  inst.b = vector_from_json(need(doc, "b", where), "instance.b");
  inst.f = f_from_json(need(doc, "f", where));
  inst.g = g_from_json(need(doc, "g", where));
  inst.beta_bar = as_real(need(doc, "beta_bar", where), "instance.beta_bar");
  inst.L_bar_lower = as_real(need(doc, "L_bar_lower", where), "instance.L_bar_lower");
  try {
    inst.check_consistency();
  } catch (const ContractError& e) {
    throw ConfigError(std::string("instance: ") + e.what());
  }
  return inst;
}

Json generator_spec_to_json(const GeneratorSpec& spec) {
  return {{"family", spec.family},
          {"n", spec.n},
          {"p", spec.p},
          {"l", spec.l},
          {"seed", spec.seed},
          {"params",
           {{"b_mode", spec.params.b_mode},
            {"negative_curvature", spec.params.negative_curvature},
            {"mu", spec.params.mu},
            {"amplitude", spec.params.amplitude},
            {"box_radius", spec.params.box_radius}}}};
}

GeneratorSpec generator_spec_from_json(const Json& doc) {
  const std::string where = "instance (generator)";
  require_keys(doc, {"family", "n", "p", "l", "seed", "params"}, where);
  GeneratorSpec spec;
  spec.family = need(doc, "family", where).get<std::string>();
  spec.n = as_int(need(doc, "n", where), "n");
  spec.p = as_int(need(doc, "p", where), "p");
  spec.l = as_int(need(doc, "l", where), "l");
  const Json& seed = need(doc, "seed", where);
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    throw ConfigError("seed: expected a nonnegative integer");
  }
  spec.seed = seed.get<std::uint64_t>();
  if (spec.n < 1 || spec.p < 1 || spec.l < 1) throw ConfigError("generator dimensions must be >= 1");
  if (auto it = doc.find("params"); it != doc.end()) {
    const Json& p = *it;
    require_keys(p, {"b_mode", "negative_curvature", "mu", "amplitude", "box_radius"},
                 "instance.params");
    if (auto b = p.find("b_mode"); b != p.end()) spec.params.b_mode = b->get<std::string>();
    if (auto v = optional_real(p, "negative_curvature", "params")) {
      spec.params.negative_curvature = *v;
    }
    if (auto v = optional_real(p, "mu", "params")) spec.params.mu = *v;
    if (auto v = optional_real(p, "amplitude", "params")) spec.params.amplitude = *v;
    if (auto v = optional_real(p, "box_radius", "params")) spec.params.box_radius = *v;
  }
  return spec;
}

// --- configuration --------------------------------------------------------------

SolverConfig solver_config_from_json(const Json& doc) {
  const std::string where = "solver";
  require_keys(doc,
               {"theta", "beta", "beta_margin", "tau", "G", "rho", "max_iters", "certify",
                "inner_tol", "inner_max_iters"},
               where);
  SolverConfig c;
  if (auto v = optional_real(doc, "theta", where)) c.theta = *v;
  if (auto it = doc.find("beta"); it != doc.end()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "auto") throw ConfigError("solver.beta: expected a number or \"auto\"");
      c.beta = std::nullopt;
    } else {
      c.beta = as_real(*it, "solver.beta");
    }
  }
  if (auto v = optional_real(doc, "beta_margin", where)) c.beta_margin = *v;
  if (auto v = optional_real(doc, "tau", where)) c.tau = *v;
  if (auto it = doc.find("G"); it != doc.end()) c.G = g_spec_from_json(*it);
  if (auto v = optional_real(doc, "rho", where)) c.rho = *v;
  if (auto it = doc.find("max_iters"); it != doc.end()) c.max_iters = as_int(*it, "solver.max_iters");
  if (auto it = doc.find("certify"); it != doc.end()) {
    if (!it->is_boolean()) throw ConfigError("solver.certify: expected a boolean");
    c.certify = it->get<bool>();
  }
  if (auto v = optional_real(doc, "inner_tol", where)) c.inner_tol = *v;
  if (auto it = doc.find("inner_max_iters"); it != doc.end()) {
    c.inner_max_iters = as_int(*it, "solver.inner_max_iters");
  }
  if (!(c.theta > 0.0 && c.theta < 2.0)) throw ConfigError("solver.theta must lie in (0, 2)");
  return c;
}

Json solver_config_to_json(const SolverConfig& c) {
  Json out{{"theta", c.theta},
           {"beta_margin", c.beta_margin},
           {"tau", c.tau},
           {"G", g_spec_to_json(c.G)},
           {"rho", c.rho},
           {"max_iters", c.max_iters},
           {"certify", c.certify},
           {"inner_tol", c.inner_tol},
           {"inner_max_iters", c.inner_max_iters}};
  if (c.beta) {
    out["beta"] = *c.beta;
  } else {
    out["beta"] = "auto";
  }
  return out;
}

namespace {

StartSpec start_from_json(const Json& doc) {
  StartSpec s;
  if (doc.is_string()) {
    const std::string p = doc.get<std::string>();
    if (p == "zeros") {
      s.policy = StartSpec::Policy::Zeros;
    } else if (p == "consistent-multiplier") {
      s.policy = StartSpec::Policy::ConsistentMultiplier;
    } else {
      throw ConfigError("start: unknown policy '" + p + "'");
    }
    return s;
  }
  const std::string where = "start";
  require_keys(doc, {"policy", "x0", "y0", "lambda0"}, where);
  if (auto it = doc.find("x0"); it != doc.end()) s.x0 = vector_from_json(*it, "start.x0");
  if (auto it = doc.find("y0"); it != doc.end()) s.y0 = vector_from_json(*it, "start.y0");
  if (auto it = doc.find("lambda0"); it != doc.end()) {
    s.lambda0 = vector_from_json(*it, "start.lambda0");
  }
  if (auto it = doc.find("policy"); it != doc.end()) {
    const StartSpec named = start_from_json(*it);
    s.policy = named.policy;
    if (s.lambda0) throw ConfigError("start: lambda0 cannot be combined with a policy");
  } else {
    if (!s.x0 || !s.y0 || !s.lambda0) {
      throw ConfigError("start: an explicit start needs x0, y0 and lambda0");
    }
    s.policy = StartSpec::Policy::Explicit;
  }
  return s;
}

Json start_to_json(const StartSpec& s) {
  Json out = Json::object();
  switch (s.policy) {
    case StartSpec::Policy::Zeros:
      out["policy"] = "zeros";
      break;
    case StartSpec::Policy::ConsistentMultiplier:
      out["policy"] = "consistent-multiplier";
      break;
    case StartSpec::Policy::Explicit:
      break;
  }
  if (s.x0) out["x0"] = vector_to_json(*s.x0);
  if (s.y0) out["y0"] = vector_to_json(*s.y0);
  if (s.lambda0) out["lambda0"] = vector_to_json(*s.lambda0);
  return out;
}

}  // namespace

RunConfigFile run_config_from_json(const Json& doc, const std::filesystem::path& base_dir) {
  const std::string where = "config";
  require_keys(doc, {"instance", "solver", "start", "outputs"}, where);
  RunConfigFile cfg;
  const Json& inst = need(doc, "instance", where);
  if (!inst.is_object()) throw ConfigError("instance: expected an object");
  if (inst.contains("family")) {
    cfg.generator = generator_spec_from_json(inst);
  } else {
    cfg.inline_instance = inst;
  }
  if (auto it = doc.find("solver"); it != doc.end()) cfg.solver = solver_config_from_json(*it);
  if (auto it = doc.find("start"); it != doc.end()) cfg.start = start_from_json(*it);
  if (auto it = doc.find("outputs"); it != doc.end()) {
    require_keys(*it, {"trace", "certificate", "report"}, "outputs");
    if (auto t = it->find("trace"); t != it->end()) {
      cfg.trace_path = resolve_path(base_dir, *t, "outputs.trace");
    }
    if (auto t = it->find("certificate"); t != it->end()) {
      cfg.certificate_path = resolve_path(base_dir, *t, "outputs.certificate");
    }
    if (auto t = it->find("report"); t != it->end()) {
      cfg.report_path = resolve_path(base_dir, *t, "outputs.report");
    }
  }
  return cfg;
}

RunConfigFile load_run_config(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  try {
    return run_config_from_json(doc, path.parent_path());
  } catch (const Json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Json run_config_to_json(const RunConfigFile& cfg) {
  Json out;
  if (cfg.generator) {
    out["instance"] = generator_spec_to_json(*cfg.generator);
  } else if (cfg.inline_instance) {
    out["instance"] = *cfg.inline_instance;
  }
  out["solver"] = solver_config_to_json(cfg.solver);
  out["start"] = start_to_json(cfg.start);
  Json outputs = Json::object();
  if (cfg.trace_path) outputs["trace"] = cfg.trace_path->string();
  if (cfg.certificate_path) outputs["certificate"] = cfg.certificate_path->string();
  if (cfg.report_path) outputs["report"] = cfg.report_path->string();
  if (!outputs.empty()) out["outputs"] = outputs;
  return out;
}

ProblemInstance build_instance(const RunConfigFile& cfg) {
  if (cfg.generator) return generate_instance(*cfg.generator);
  if (cfg.inline_instance) {
    try {
      return instance_from_json(*cfg.inline_instance);
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("instance: ") + e.what());
    }
  }
  throw ConfigError("config has no instance");
}

StartPoint resolve_start(const ProblemInstance& inst, const StartSpec& spec, std::string* warning) {
  StartPoint s;
  s.x0 = spec.x0.value_or(Vector::Zero(inst.n()));
  s.y0 = spec.y0.value_or(Vector::Zero(inst.p()));
  if (s.x0.size() != inst.n()) throw ConfigError("start.x0 has the wrong length");
  if (s.y0.size() != inst.p()) throw ConfigError("start.y0 has the wrong length");
  if (spec.policy == StartSpec::Policy::Explicit) {
    s.lambda0 = *spec.lambda0;
    if (s.lambda0.size() != inst.l()) throw ConfigError("start.lambda0 has the wrong length");
    return s;
  }
  if (!std::isfinite(inst.f->value(s.x0))) s.x0 = inst.f->scaled_prox(s.x0, 1.0);
  if (spec.policy == StartSpec::Policy::Zeros) {
    s.lambda0 = Vector::Zero(inst.l());
    return s;
  }
  auto [lambda, residual] = consistent_multiplier(inst, s.y0);
  s.lambda0 = std::move(lambda);
  const double scale = std::max(1.0, inst.g->gradient(s.y0).norm());
  if (residual > 1e-8 * scale && warning) {
    *warning = "consistent-multiplier: B^T lambda0 = grad g(y0) has no solution (residual " +
               format_real(residual) + "); the least-squares multiplier is used";
  }
  return s;
}

// --- traces -------------------------------------------------------------------

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json real_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

TraceRow trace_row(const IterateRecord& r) {
  return {r.k, r.res_primal, r.res_dual_y, r.res_dual_x, r.L_beta, r.delta_k, r.eta_k, r.merit};
}

std::string trace_csv(const std::vector<IterateRecord>& trace) {
  std::string out = kTraceHeader;
  out += '\n';
  for (const auto& rec : trace) {
    const TraceRow r = trace_row(rec);
    out += std::to_string(r.k);
    for (double v : {r.res_primal, r.res_dual_y, r.res_dual_x, r.L_beta, r.delta_k, r.eta_k,
                     r.merit}) {
      out += ',';
      out += format_real(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<TraceRow> parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw ConfigError("trace CSV: header must be '" + std::string(kTraceHeader) + "'");
  }
  std::vector<TraceRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) {
      throw ConfigError("trace CSV line " + std::to_string(lineno) + ": expected 8 columns");
    }
    try {
      TraceRow r;
      r.k = std::stoi(cells[0]);
      double* fields[] = {&r.res_primal, &r.res_dual_y, &r.res_dual_x, &r.L_beta,
                          &r.delta_k,    &r.eta_k,      &r.merit};
      for (int i = 0; i < 7; ++i) *fields[i] = std::stod(cells[i + 1]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw ConfigError("trace CSV line " + std::to_string(lineno) + ": not a number");
    }
  }
  return rows;
}

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  return parse_trace_csv(read_text(path));
}

// --- documents ------------------------------------------------------------------

Json constants_to_json(const DerivedConstants& c) {
  return {{"theta", real_json(c.theta)},
          {"beta", real_json(c.beta)},
          {"tau", real_json(c.tau)},
          {"gamma", real_json(c.gamma)},
          {"c1", real_json(c.c1)},
          {"delta1", real_json(c.delta1)},
          {"delta2", real_json(c.delta2)},
          {"eta0", real_json(c.eta0)},
          {"delta0", real_json(c.delta0)},
          {"kappa", real_json(c.kappa)},
          {"L", real_json(c.L)},
          {"m", real_json(c.m)},
          {"sigma_B", real_json(c.spectral.sigma_B)},
          {"sigma_B_plus", real_json(c.spectral.sigma_B_plus)},
          {"norm_BtB", real_json(c.spectral.norm_BtB)},
          {"rank_B", c.spectral.rank},
          {"M", real_json(c.rate_constant())}};
}

Json certificate_to_json(const Certificate& cert) {
  Json checks = Json::array();
  for (const auto& r : cert.checks) {
    Json row{{"name", r.name},
             {"slack", real_json(r.slack)},
             {"tolerance", real_json(r.tolerance)},
             {"pass", r.pass}};
    if (r.iteration == kWholeRun) {
      row["iteration"] = "run";
    } else {
      row["iteration"] = r.iteration;
    }
    checks.push_back(std::move(row));
  }
  return {{"checks_run", cert.checks.size()},
          {"passed", cert.passed},
          {"failed", cert.failed},
          {"all_pass", cert.all_pass()},
          {"worst_margin", real_json(cert.worst_margin)},
          {"worst_check", cert.worst_check},
          {"corollary_regime", cert.corollary_regime},
          {"checks", std::move(checks)}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace padmm
