#pragma once

#include "shrinkvar/types.hpp"

namespace shrinkvar {

// Closed-form frequentist fit: point estimate plus the knob that produced it.
struct FreqFit {
  CoefMatrix b_hat;
  Method method;
  double lambda = std::numeric_limits<double>::quiet_NaN();            // Ridge only
  double shrink_intensity = std::numeric_limits<double>::quiet_NaN();  // NS only, in [0,1]
};

inline constexpr double kRidgeLambdaDefault = 0.1;

// Ridge: B_hat' = (X'X + lambda*I)^{-1} X'Y. No centering or standardization;
// the penalty applies to every coefficient equally. lambda = 0 on a singular
// design raises RankDeficiencyError.
FreqFit ridge_fit(const LaggedDesign& design, double lambda = kRidgeLambdaDefault);

// Nonparametric covariance shrinkage: sample covariances of the design are
// shrunk toward the diagonal of S_xx with the Schafer-Strimmer moment-based
// optimal intensity (clipped to [0,1]), then solved for the coefficients.
// `center` subtracts column means first (the implied intercept is discarded);
// `forced_intensity` >= 0 overrides the estimated intensity (test hook).
FreqFit ns_fit(const LaggedDesign& design, bool center = true, double forced_intensity = -1.0);

// Solves M * W = rhs for symmetric positive semi-definite M. Falls back to an
// eigenvalue-thresholded pseudo-inverse when the condition number exceeds
// 1e12; with `allow_fallback` false that case raises RankDeficiencyError.
Matrix solve_spd(const Matrix& m, const Matrix& rhs, bool allow_fallback = true);

}  // namespace shrinkvar
