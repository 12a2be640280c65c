#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bcg/dense.hpp"

namespace bcg {

/// Coefficients of the step that produced X_k from X_{k-1}.
///
/// Every solver variant stores the coefficients of the standard recurrence
/// (effective Upsilon and Xi), so the bound estimators do not need to know
/// which variant ran.
struct IterationRecord {
  std::size_t k = 0;
  Matrix rtr_prev;  ///< R_{k-1}^T R_{k-1}
  Matrix rtr;       ///< R_k^T R_k
  Matrix upsilon;   ///< Upsilon_{k-1}
  Matrix xi;        ///< Xi_k
  Matrix theta;     ///< Theta_{k-1} = R_{k-1}^T R_{k-1} Upsilon_{k-1}
  double residual_fro = 0.0;  ///< ||R_k||_F of the recursive residual
  /// ||(B - A X_k) - R_k||_F / ||B - A X_k||_F when recomputed at this step.
  std::optional<double> residual_drift;
  bool attainable_accuracy_reached = false;
};

using History = std::vector<IterationRecord>;

}  // namespace bcg
