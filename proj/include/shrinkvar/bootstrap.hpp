#pragma once

#include <functional>
#include <vector>

#include "shrinkvar/rng.hpp"
#include "shrinkvar/types.hpp"

namespace shrinkvar {

// Per-coefficient normal-approximation intervals around a point estimate.
struct IntervalSet {
  Vector lower;
  Vector upper;
  Vector se;
  double level = 0.95;
};

inline constexpr int kBootDefault = 30;
inline constexpr int kBlockLenDefault = 4;

// Partition row indices 0..n-1 into consecutive non-overlapping blocks of
// `block_len`; a final short block is kept as-is.
std::vector<std::pair<Eigen::Index, Eigen::Index>> block_partition(Eigen::Index n_rows, int block_len);

// Deterministic core: concatenates the picked blocks (indices into the
// partition) and truncates to the original row count. X/Y rows stay paired.
LaggedDesign block_resample_with_picks(const LaggedDesign& design, int block_len,
                                       const std::vector<std::size_t>& picks);

// Samples blocks with replacement until the row count is covered, then
// truncates to exactly the original length.
LaggedDesign block_resample(const LaggedDesign& design, int block_len, Rng& rng);

using Fitter = std::function<Vector(const LaggedDesign&)>;  // returns flat coefficients

// SE_j = sample standard deviation (divisor n_boot-1) of coefficient j across
// n_boot refits on block resamples. A failed refit is retried once with a
// fresh resample before the error propagates.
Vector bootstrap_se(const Fitter& fitter, const LaggedDesign& design, int n_boot, int block_len,
                    Rng& rng);

// [point - z*se, point + z*se] with z = 1.959964 at level 0.95.
IntervalSet normal_interval(const Vector& point, const Vector& se, double level = 0.95);

}  // namespace shrinkvar
