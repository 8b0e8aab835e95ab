// Shared numeric types, tolerances and the error hierarchy.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace flatkahler {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

namespace tol {
// Floating residual bound for commutation and structure identities.
inline constexpr double kNumeric = 1e-9;
// Integrality rounding of Hodge numbers.
inline constexpr double kRound = 1e-6;
// Smallest admissible singular value of a form restricted to its complement.
inline constexpr double kDegenerate = 1e-8;
// Locus scan thresholds.
inline constexpr double kFull = 1e-8;
inline constexpr double kSeed = 1e-2;
inline constexpr double kRoot = 1e-9;
inline constexpr double kSeparation = 1e-3;
}  // namespace tol

inline constexpr int kDefaultClosureCap = 10000;
inline constexpr int kDefaultGridSize = 20000;

// Process exit codes of the command line tool.
enum class ExitCode : int {
  kOk = 0,
  kInvalidData = 1,
  kIoOrParse = 2,
  kConsistency = 3,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

// The input describes something outside the supported domain.
class InvalidData : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kInvalidData; }
};

class ClosureCapExceeded : public InvalidData {
 public:
  using InvalidData::InvalidData;
};

class DegenerateOnComplement : public InvalidData {
 public:
  using InvalidData::InvalidData;
};

class NotAntiCommuting : public InvalidData {
 public:
  using InvalidData::InvalidData;
};

class NonNegativeSpectrum : public InvalidData {
 public:
  using InvalidData::InvalidData;
};

class ParseError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kIoOrParse; }
};

// An internal identity that must hold did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kConsistency; }
};

class NonIntegralInvariant : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

class RoundingFailure : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

}  // namespace flatkahler
