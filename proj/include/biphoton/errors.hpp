#pragma once

#include <stdexcept>
#include <string>

namespace hom {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

/// The modulation annihilates the state: the normalization integral vanishes at this beta.
struct DegenerateStateError : Error {
  DegenerateStateError(const std::string& what, double beta_s) : Error(what), beta(beta_s) {}
  double beta;
};

struct QuadratureError : Error {
  using Error::Error;
};

struct TruncationError : Error {
  TruncationError(const std::string& what, int dim) : Error(what), suggested_dim(dim) {}
  int suggested_dim;
};

struct ConfigError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

}  // namespace hom
