#pragma once

#include "shrinkvar/types.hpp"

namespace shrinkvar {

// Builds the lagged regression pair for lag order p. Requires T >= p+1 rows
// and finite values.
LaggedDesign build_design(const SeriesMatrix& series, int p);

// VAR(1) companion embedding of B: top block row [A_1 ... A_p], identity
// subdiagonal blocks, zeros elsewhere. (d*p) x (d*p).
Matrix companion_matrix(const CoefMatrix& coef);

// Largest eigenvalue modulus of a square matrix.
double spectral_radius(const Matrix& m);

// One-step conditional mean sum_i A_i * history.row(i-1); history holds the
// last p observations, newest first.
Vector predict_one_step(const CoefMatrix& coef, const Matrix& history);

}  // namespace shrinkvar
