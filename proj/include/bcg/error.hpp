#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bcg {

enum class Errc {
  RankDeficient,
  NotPositiveDefinite,
  NotSymmetric,
  Singular,
  DimensionMismatch,
  NoConvergence,
  BadHeader,
  Malformed,
  NonSquare,
  Unsupported,
  PersistentRankDeficiency,
  TooLarge,
  ShiftNotBelowSpectrum,
  NearSingularCoefficient,
  SingularSigma,
  SingularBracket,
  SingularPhi,
  InsufficientHistory,
  NonPositiveMu,
  MissingFile,
  InvalidArgument,
};

const char* to_string(Errc code) noexcept;

/// The single exception type thrown by the library. `index()` carries the
/// pivot, column or iteration the failure refers to; `value()` carries a
/// numeric detail such as a condition estimate.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::size_t index = 0,
        double value = 0.0);

  Errc code() const noexcept { return code_; }
  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  Errc code_;
  std::size_t index_;
  double value_;
};

}  // namespace bcg
