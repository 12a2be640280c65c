#include "bcg/error.hpp"

namespace bcg {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::Singular: return "Singular";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::BadHeader: return "BadHeader";
    case Errc::Malformed: return "Malformed";
    case Errc::NonSquare: return "NonSquare";
    case Errc::Unsupported: return "PatternOrComplexUnsupported";
    case Errc::PersistentRankDeficiency: return "PersistentRankDeficiency";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ShiftNotBelowSpectrum: return "ShiftNotBelowSpectrum";
    case Errc::NearSingularCoefficient: return "NearSingularCoefficient";
    case Errc::SingularSigma: return "SingularSigma";
    case Errc::SingularBracket: return "SingularBracket";
    case Errc::SingularPhi: return "SingularPhi";
    case Errc::InsufficientHistory: return "InsufficientHistory";
    case Errc::NonPositiveMu: return "NonPositiveMu";
    case Errc::MissingFile: return "MissingMatrixFile";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what, std::size_t index,
             double value)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      index_(index),
      value_(value) {}

}  // namespace bcg
