#include "shrinkvar/bootstrap.hpp"

#include <cmath>
#include <stdexcept>

#include "shrinkvar/stats.hpp"

namespace shrinkvar {

std::vector<std::pair<Eigen::Index, Eigen::Index>> block_partition(Eigen::Index n_rows, int block_len) {
  if (n_rows < 1) throw std::invalid_argument("block_partition: empty design");
  if (block_len < 1) throw std::invalid_argument("block_partition: block_len must be >= 1");
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  for (Eigen::Index start = 0; start < n_rows; start += block_len)
    blocks.emplace_back(start, std::min<Eigen::Index>(block_len, n_rows - start));
  return blocks;
}

LaggedDesign block_resample_with_picks(const LaggedDesign& design, int block_len,
                                       const std::vector<std::size_t>& picks) {
  const auto n = design.rows();
  const auto blocks = block_partition(n, block_len);
  LaggedDesign out;
  out.spec = design.spec;
  out.X.resize(n, design.X.cols());
  out.Y.resize(n, design.Y.cols());
  Eigen::Index filled = 0;
  for (std::size_t pick : picks) {
    if (filled >= n) break;
    if (pick >= blocks.size()) throw std::out_of_range("block_resample: pick outside partition");
    const auto [start, len] = blocks[pick];
    const Eigen::Index take = std::min<Eigen::Index>(len, n - filled);
    out.X.middleRows(filled, take) = design.X.middleRows(start, take);
    out.Y.middleRows(filled, take) = design.Y.middleRows(start, take);
    filled += take;
  }
  if (filled < n) throw std::invalid_argument("block_resample: picks do not cover the design");
  return out;
}

LaggedDesign block_resample(const LaggedDesign& design, int block_len, Rng& rng) {
  const auto n = design.rows();
  if (n < 1) throw std::invalid_argument("block_resample: empty design");
  if (n < block_len) throw std::invalid_argument("block_resample: fewer rows than block_len");
  const auto blocks = block_partition(n, block_len);
  std::vector<std::size_t> picks;
  Eigen::Index covered = 0;
  while (covered < n) {
    const std::size_t pick = rng.uniform_int(blocks.size());
    picks.push_back(pick);
    covered += blocks[pick].second;
  }
  return block_resample_with_picks(design, block_len, picks);
}

Vector bootstrap_se(const Fitter& fitter, const LaggedDesign& design, int n_boot, int block_len,
                    Rng& rng) {
  if (n_boot < 2) throw std::invalid_argument("bootstrap_se: need at least 2 bootstrap refits");
  Matrix draws;  // n_boot x n_coef
  for (int b = 0; b < n_boot; ++b) {
    Rng boot_rng = rng.derive(static_cast<std::uint64_t>(b));
    Vector coef;
    try {
      coef = fitter(block_resample(design, block_len, boot_rng));
    } catch (const std::exception&) {
      // One retry on a fresh resample, then let the failure propagate.
      Rng retry_rng = boot_rng.derive(0x5e7271ULL);
      coef = fitter(block_resample(design, block_len, retry_rng));
    }
    if (draws.size() == 0) draws.resize(n_boot, coef.size());
    if (coef.size() != draws.cols())
      throw std::invalid_argument("bootstrap_se: fitter changed coefficient count");
    draws.row(b) = coef.transpose();
  }
  const Vector mean = draws.colwise().mean();
  Vector se(draws.cols());
  for (Eigen::Index j = 0; j < draws.cols(); ++j) {
    const double ss = (draws.col(j).array() - mean(j)).square().sum();
    se(j) = std::sqrt(ss / static_cast<double>(n_boot - 1));
  }
  return se;
}

IntervalSet normal_interval(const Vector& point, const Vector& se, double level) {
  if (point.size() != se.size()) throw std::invalid_argument("normal_interval: length mismatch");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("normal_interval: level outside (0,1)");
  if ((se.array() < 0.0).any()) throw std::invalid_argument("normal_interval: negative standard error");
  if (level != 0.95)
    throw std::invalid_argument("normal_interval: only the 0.95 level is supported (z pinned)");
  IntervalSet out;
  out.se = se;
  out.level = level;
  out.lower = point - stats::kZ975 * se;
  out.upper = point + stats::kZ975 * se;
  return out;
}

}  // namespace shrinkvar
