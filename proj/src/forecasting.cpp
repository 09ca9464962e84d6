#include "shrinkvar/forecasting.hpp"

#include <stdexcept>

#include "shrinkvar/var_core.hpp"

namespace shrinkvar {

ForecastSet sequential_forecast(const CoefMatrix& coef, const SeriesMatrix& history,
                                const SeriesMatrix& test) {
  const int d = coef.spec().d;
  const int p = coef.spec().p;
  if (history.rows() < p) throw std::length_error("sequential_forecast: history shorter than p");
  if (history.cols() != d || test.cols() != d)
    throw std::invalid_argument("sequential_forecast: column count mismatch");
  const auto H = test.rows();

  ForecastSet fs;
  fs.predictions.resize(H, d);
  fs.actuals = test;

  Matrix window(p, d);  // newest first
  for (Eigen::Index h = 0; h < H; ++h) {
    for (int lag = 1; lag <= p; ++lag) {
      // Observation at time (test start + h) - lag, drawn from realized data.
      const Eigen::Index idx = h - lag;
      window.row(lag - 1) = idx >= 0 ? test.row(idx) : history.row(history.rows() + idx);
    }
    fs.predictions.row(h) = predict_one_step(coef, window).transpose();
  }
  return fs;
}

SeriesMatrix difference(const SeriesMatrix& series) {
  if (series.rows() < 2) throw std::length_error("difference: need at least 2 rows");
  return series.bottomRows(series.rows() - 1) - series.topRows(series.rows() - 1);
}

Matrix invert_difference(const Vector& last_level, const Matrix& predicted_diffs) {
  if (last_level.size() != predicted_diffs.cols())
    throw std::invalid_argument("invert_difference: dimension mismatch");
  if (!last_level.allFinite() || !predicted_diffs.allFinite())
    throw std::invalid_argument("invert_difference: non-finite input");
  Matrix levels(predicted_diffs.rows(), predicted_diffs.cols());
  Vector anchor = last_level;
  for (Eigen::Index h = 0; h < predicted_diffs.rows(); ++h) {
    anchor += predicted_diffs.row(h).transpose();
    levels.row(h) = anchor.transpose();
  }
  return levels;
}

Matrix invert_difference_realized(const Matrix& anchor_levels, const Matrix& predicted_diffs) {
  if (anchor_levels.rows() != predicted_diffs.rows() ||
      anchor_levels.cols() != predicted_diffs.cols())
    throw std::invalid_argument("invert_difference_realized: shape mismatch");
  return anchor_levels + predicted_diffs;
}

}  // namespace shrinkvar
