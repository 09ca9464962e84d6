#pragma once

#include "shrinkvar/types.hpp"

namespace shrinkvar {

struct ForecastSet {
  Matrix predictions;  // H x d
  Matrix actuals;      // H x d
  Method method = Method::Ridge;

  Eigen::Index horizon() const { return predictions.rows(); }
};

// Sequential one-step-ahead forecasts over the test window. Each prediction
// conditions on the last p realized observations (history, then realized test
// rows) — never on earlier predictions — with coefficients held fixed.
ForecastSet sequential_forecast(const CoefMatrix& coef, const SeriesMatrix& history,
                                const SeriesMatrix& test);

// First differences: row t = y_{t+1} - y_t, T-1 rows.
SeriesMatrix difference(const SeriesMatrix& series);

// Iterated inversion: levels from predicted differences, each step anchored
// at the previous *forecast* (yhat_{T+h} = yhat_{T+h-1} + dhat_{T+h}).
Matrix invert_difference(const Vector& last_level, const Matrix& predicted_diffs);

// Realized-anchor inversion for one-step-ahead level forecasts: row h is
// anchor_levels.row(h) + predicted_diffs.row(h), where anchor row h holds the
// realized level at the step before forecast h.
Matrix invert_difference_realized(const Matrix& anchor_levels, const Matrix& predicted_diffs);

}  // namespace shrinkvar
