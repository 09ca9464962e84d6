#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace shrinkvar {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A time series: T rows (time points) by d columns (components).
using SeriesMatrix = Matrix;

// Model shape: series dimension d and fitted lag order p.
struct VarSpec {
  int d = 1;
  int p = 1;

  int regressor_count() const { return d * p; }
  int coef_count() const { return d * d * p; }

  void validate() const {
    if (d < 1 || p < 1) throw std::invalid_argument("VarSpec: d and p must be >= 1");
  }

  bool operator==(const VarSpec&) const = default;
};

// Stacked coefficient matrix B = [A_1 ... A_p], d rows by d*p columns.
// Lag block i occupies columns (i-1)*d .. i*d-1.
//
// Canonical flat order: column-major vec(B), i.e. coefficient index
// j = c*d + r for entry B(r, c) — rows fastest, then lag blocks. Every
// estimator, interval, and metric in the project uses this one ordering.
class CoefMatrix {
 public:
  CoefMatrix(VarSpec spec, Matrix entries) : spec_(spec), entries_(std::move(entries)) {
    spec_.validate();
    if (entries_.rows() != spec_.d || entries_.cols() != spec_.regressor_count())
      throw std::invalid_argument("CoefMatrix: entries must be d x (d*p)");
  }

  static CoefMatrix Zero(VarSpec spec) {
    spec.validate();
    return CoefMatrix(spec, Matrix::Zero(spec.d, spec.regressor_count()));
  }

  static CoefMatrix FromFlat(VarSpec spec, const Vector& flat) {
    spec.validate();
    if (flat.size() != spec.coef_count())
      throw std::invalid_argument("CoefMatrix: flat vector must have d*d*p entries");
    Matrix m = Eigen::Map<const Matrix>(flat.data(), spec.d, spec.regressor_count());
    return CoefMatrix(spec, std::move(m));
  }

  const VarSpec& spec() const { return spec_; }
  const Matrix& entries() const { return entries_; }

  // A_i, 1-based lag index.
  Eigen::Block<const Matrix> lag_block(int i) const {
    if (i < 1 || i > spec_.p) throw std::out_of_range("CoefMatrix: lag index outside 1..p");
    return entries_.block(0, (i - 1) * spec_.d, spec_.d, spec_.d);
  }

  Vector flat() const { return Eigen::Map<const Vector>(entries_.data(), entries_.size()); }

 private:
  VarSpec spec_;
  Matrix entries_;
};

// Regression pair built from a series: row t of X is
// (y_{t-1}', y_{t-2}', ..., y_{t-p}') for response row y_t' of Y.
struct LaggedDesign {
  Matrix X;  // (T-p) x (d*p)
  Matrix Y;  // (T-p) x d
  VarSpec spec;

  Eigen::Index rows() const { return X.rows(); }
};

enum class Method { Horseshoe, Lasso, Normal, NS, Ridge };

// Fixed method ordering; also the deterministic tie-break order for
// best-method tallies.
inline constexpr Method kAllMethods[] = {Method::Horseshoe, Method::Lasso, Method::Normal,
                                         Method::NS, Method::Ridge};

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Horseshoe: return "Horseshoe";
    case Method::Lasso: return "Lasso";
    case Method::Normal: return "Normal";
    case Method::NS: return "ns";
    case Method::Ridge: return "Ridge";
  }
  return "?";
}

inline Method method_from_name(const std::string& name) {
  for (Method m : kAllMethods)
    if (name == method_name(m)) return m;
  throw std::invalid_argument("unknown method name: " + name);
}

// Unified estimator output: point estimate, per-coefficient 95% bounds in
// canonical flat order, and fit diagnostics where applicable.
struct FitResult {
  Method method;
  CoefMatrix coef;
  Vector lower;
  Vector upper;
  double max_rhat = std::numeric_limits<double>::quiet_NaN();  // Bayesian fits only
  double min_ess = std::numeric_limits<double>::quiet_NaN();   // Bayesian fits only
};

}  // namespace shrinkvar
