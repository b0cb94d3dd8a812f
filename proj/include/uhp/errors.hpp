#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace uhp {

// Base for every numeric failure the toolkit can signal.  Suites catch this
// and turn it into a failing record instead of crashing.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BranchCutHit : public NumericError {
 public:
  BranchCutHit(const std::string& where, std::complex<double> at)
      : NumericError("branch cut hit in " + where + " at (" +
                     std::to_string(at.real()) + ", " +
                     std::to_string(at.imag()) + ")") {}
};

class PoleHit : public NumericError {
 public:
  PoleHit(const std::string& where, std::complex<double> at)
      : NumericError("pole hit in " + where + " at (" +
                     std::to_string(at.real()) + ", " +
                     std::to_string(at.imag()) + ")") {}
};

class OutsideDomain : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateMap : public NumericError {
 public:
  using NumericError::NumericError;
};

class InvalidSpec : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonConvergent : public NumericError {
 public:
  NonConvergent(double previous, double last, int depth)
      : NumericError("quadrature did not converge: last estimates " +
                     std::to_string(previous) + " -> " + std::to_string(last) +
                     " at depth " + std::to_string(depth)),
        previous_estimate(previous),
        last_estimate(last),
        depth(depth) {}
  double previous_estimate;
  double last_estimate;
  int depth;
};

class DivergentTail : public NumericError {
 public:
  using NumericError::NumericError;
};

class SupDiverging : public NumericError {
 public:
  explicit SupDiverging(double last_value)
      : NumericError("sup search still growing at maximum refinement; "
                     "candidate value " +
                     std::to_string(last_value)),
        last_value(last_value) {}
  double last_value;
};

class NonPositiveNorm : public NumericError {
 public:
  using NumericError::NumericError;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownSuite : public std::runtime_error {
 public:
  explicit UnknownSuite(const std::string& name)
      : std::runtime_error("unknown suite: " + name) {}
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uhp
