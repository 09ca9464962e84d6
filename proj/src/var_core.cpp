#include "shrinkvar/var_core.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace shrinkvar {

LaggedDesign build_design(const SeriesMatrix& series, int p) {
  if (p < 1) throw std::invalid_argument("build_design: p must be >= 1");
  const auto T = series.rows();
  const auto d = series.cols();
  if (d < 1) throw std::invalid_argument("build_design: series must have at least one column");
  if (T < p + 1) throw std::length_error("build_design: series needs at least p+1 rows");
  if (!series.allFinite()) throw std::invalid_argument("build_design: series contains non-finite values");

  const auto n = T - p;
  LaggedDesign design;
  design.spec = VarSpec{static_cast<int>(d), p};
  design.X.resize(n, d * p);
  design.Y.resize(n, d);
  for (Eigen::Index t = p; t < T; ++t) {
    const Eigen::Index row = t - p;
    design.Y.row(row) = series.row(t);
    for (int lag = 1; lag <= p; ++lag)
      design.X.block(row, (lag - 1) * d, 1, d) = series.row(t - lag);
  }
  return design;
}

Matrix companion_matrix(const CoefMatrix& coef) {
  const int d = coef.spec().d;
  const int p = coef.spec().p;
  const int k = d * p;
  Matrix companion = Matrix::Zero(k, k);
  companion.topRows(d) = coef.entries();
  if (p > 1) companion.block(d, 0, k - d, k - d).setIdentity();
  return companion;
}

double spectral_radius(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("spectral_radius: matrix must be square");
  if (!m.allFinite()) throw std::invalid_argument("spectral_radius: matrix contains non-finite values");
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Vector predict_one_step(const CoefMatrix& coef, const Matrix& history) {
  const int d = coef.spec().d;
  const int p = coef.spec().p;
  if (history.rows() != p || history.cols() != d)
    throw std::length_error("predict_one_step: history must be p rows of d columns, newest first");
  Vector y = Vector::Zero(d);
  for (int lag = 1; lag <= p; ++lag)
    y += coef.lag_block(lag) * history.row(lag - 1).transpose();
  return y;
}

}  // namespace shrinkvar
