#pragma once

#include <stdexcept>
#include <string>

namespace padmm {

// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a precondition (dimension mismatch, bad argument).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of a formula (e.g. theta not in (0,2)).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Problem data violates one of the standing assumptions.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

// Solver parameters are inadmissible or inconsistent with the instance.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An oracle returned a non-finite value where a finite one is required.
class OracleError : public Error {
 public:
  using Error::Error;
};

// The y-subproblem solver could not reach its tolerance.
class InnerSolverError : public Error {
 public:
  InnerSolverError(const std::string& what, double achieved)
      : Error(what), achieved_gradient_norm(achieved) {}
  double achieved_gradient_norm;
};

// Iterates blew up; almost always a hand-picked beta that is not admissible.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace padmm
