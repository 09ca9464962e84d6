#include "shrinkvar/freq_estimators.hpp"

#include <Eigen/Eigenvalues>

#include "shrinkvar/errors.hpp"

namespace shrinkvar {

namespace {
constexpr double kConditionLimit = 1e12;
}

Matrix solve_spd(const Matrix& m, const Matrix& rhs, bool allow_fallback) {
  Eigen::SelfAdjointEigenSolver<Matrix> eigen(m);
  const Vector& ev = eigen.eigenvalues();
  const double ev_max = ev.maxCoeff();
  const double ev_min = ev.minCoeff();
  const bool ill = !(ev_min > 0.0) || ev_max / ev_min > kConditionLimit;
  if (!ill) return eigen.eigenvectors() * (ev.cwiseInverse().asDiagonal() * (eigen.eigenvectors().transpose() * rhs));
  if (!allow_fallback)
    throw RankDeficiencyError("solve_spd: matrix singular or condition number above 1e12");
  // Pseudo-inverse: drop eigenvalues below ev_max / 1e12.
  const double cutoff = ev_max > 0.0 ? ev_max / kConditionLimit : 0.0;
  Vector inv = ev;
  for (Eigen::Index i = 0; i < inv.size(); ++i) inv(i) = ev(i) > cutoff ? 1.0 / ev(i) : 0.0;
  return eigen.eigenvectors() * (inv.asDiagonal() * (eigen.eigenvectors().transpose() * rhs));
}

FreqFit ridge_fit(const LaggedDesign& design, double lambda) {
  if (design.rows() < 1) throw InsufficientDataError("ridge_fit: empty design");
  if (lambda < 0.0) throw std::invalid_argument("ridge_fit: lambda must be >= 0");
  const auto k = design.X.cols();
  Matrix gram = design.X.transpose() * design.X;
  gram.diagonal().array() += lambda;
  Matrix bt = solve_spd(gram, design.X.transpose() * design.Y, /*allow_fallback=*/lambda > 0.0);
  return FreqFit{CoefMatrix(design.spec, bt.transpose()), Method::Ridge, lambda,
                 std::numeric_limits<double>::quiet_NaN()};
}

FreqFit ns_fit(const LaggedDesign& design, bool center, double forced_intensity) {
  const auto n = design.rows();
  if (n < 3) throw InsufficientDataError("ns_fit: need more than 2 design rows");
  const auto k = design.X.cols();

  Matrix xc = design.X;
  Matrix yc = design.Y;
  if (center) {
    xc.rowwise() -= design.X.colwise().mean();
    yc.rowwise() -= design.Y.colwise().mean();
  }

  const double nn = static_cast<double>(n);
  Matrix s_xx = xc.transpose() * xc / (nn - 1.0);
  Matrix s_xy = xc.transpose() * yc / (nn - 1.0);

  double delta;
  if (forced_intensity >= 0.0) {
    if (forced_intensity > 1.0) throw std::invalid_argument("ns_fit: forced intensity outside [0,1]");
    delta = forced_intensity;
  } else {
    // Moment-based optimal intensity for the diagonal target (Schafer-Strimmer):
    // delta* = sum_{i!=j} Var_hat(s_ij) / sum_{i!=j} s_ij^2, with
    // Var_hat(s_ij) = n/(n-1)^3 * sum_t (w_tij - w_bar_ij)^2, w_tij = xc_ti*xc_tj.
    double var_sum = 0.0;
    double sq_sum = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = i + 1; j < k; ++j) {
        const double w_bar = xc.col(i).dot(xc.col(j)) / nn;
        double ss = 0.0;
        for (Eigen::Index t = 0; t < n; ++t) {
          const double w = xc(t, i) * xc(t, j) - w_bar;
          ss += w * w;
        }
        var_sum += nn / ((nn - 1.0) * (nn - 1.0) * (nn - 1.0)) * ss;
        const double s_ij = s_xx(i, j);
        sq_sum += s_ij * s_ij;
      }
    }
    delta = sq_sum > 0.0 ? std::clamp(var_sum / sq_sum, 0.0, 1.0) : 0.0;
  }

  Matrix shrunk = (1.0 - delta) * s_xx;
  shrunk.diagonal() = s_xx.diagonal();
  Matrix bt = solve_spd(shrunk, s_xy);
  return FreqFit{CoefMatrix(design.spec, bt.transpose()), Method::NS,
                 std::numeric_limits<double>::quiet_NaN(), delta};
}

}  // namespace shrinkvar
