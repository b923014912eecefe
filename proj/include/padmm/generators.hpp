#pragma once

// Seeded instance families with a known (or conservatively bounded) infimum.
//
//   quad-quad    f convex quadratic, g quadratic (possibly indefinite)
//   l0-ls        f = mu ||x||_0, g strongly convex quadratic
//   box-cos      f = indicator of [-r, r]^n, g = 0.5 ||y||^2 + a sum cos(y_i)
//   sphere-quad  f = indicator of the unit sphere, g quadratic (possibly indefinite)
//
// Range inclusion holds by construction: A = B C and b = B d.

#include <cstdint>
#include <string>
#include <vector>

#include "padmm/problem.hpp"

namespace padmm {

struct GeneratorParams {
  // "full": B has full rank min(l, p). "deficient": rank about min(l, p) / 2.
  std::string b_mode = "full";
  double negative_curvature = 0.5;  // most negative eigenvalue of Q (quad-quad, sphere-quad)
  double mu = 0.1;                  // l0-ls
  double amplitude = 2.0;           // box-cos
  double box_radius = 1.0;          // box-cos
};

struct GeneratorSpec {
  std::string family;
  int n = 1;
  int p = 1;
  int l = 1;
  std::uint64_t seed = 0;
  GeneratorParams params;
};

const std::vector<std::string>& generator_families();

/// Throws ConfigError for unknown families, bad dimensions, or data whose
/// infimum is unbounded for every beta_bar.
ProblemInstance generate_instance(const GeneratorSpec& spec);

/// Minimum of 0.5 t^2 + a cos(t) over t.
double cosine_scalar_minimum(double amplitude);

}  // namespace padmm
