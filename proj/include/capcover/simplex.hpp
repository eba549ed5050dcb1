#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

namespace capcover::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

template <typename Scalar>
struct Result {
  Status status = Status::kInfeasible;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar objective = Scalar(0);
  long pivots = 0;
};

template <typename Scalar>
struct Options {
  Scalar tol = Scalar(1e-7);
  Scalar pivot_eps = Scalar(1e-11);
  long max_pivots = 200000;
};

/// Dense two-phase primal simplex with Bland's rule.
///
///   minimize  cost' x   subject to  A x >= rhs,  0 <= x <= upper.
///
/// Deterministic: identical inputs give identical pivots and output.
template <typename Scalar>
Result<Scalar> minimize_covering(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A,
                                 const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& rhs,
                                 const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& cost,
                                 const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& upper,
                                 const Options<Scalar>& options = {}) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  const Eigen::Index rows = A.rows();
  const Eigen::Index n = A.cols();

  // Column layout: [x (n) | surplus (rows) | bound slack (n) | artificial (k) | rhs]
  std::vector<Eigen::Index> needs_artificial;
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (rhs(i) > Scalar(0)) needs_artificial.push_back(i);
  }
  const Eigen::Index n_art = static_cast<Eigen::Index>(needs_artificial.size());
  const Eigen::Index m = rows + n;
  const Eigen::Index cols = n + rows + n + n_art;
  const Eigen::Index rhs_col = cols;

  Matrix T = Matrix::Zero(m + 1, cols + 1);  // last row holds reduced costs
  std::vector<Eigen::Index> basis(static_cast<size_t>(m));

  Eigen::Index art = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (rhs(i) > Scalar(0)) {
      T.row(i).head(n) = A.row(i);
      T(i, n + i) = Scalar(-1);
      T(i, n + rows + n + art) = Scalar(1);
      T(i, rhs_col) = rhs(i);
      basis[static_cast<size_t>(i)] = n + rows + n + art;
      ++art;
    } else {
      T.row(i).head(n) = -A.row(i);
      T(i, n + i) = Scalar(1);
      T(i, rhs_col) = -rhs(i);
      basis[static_cast<size_t>(i)] = n + i;
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    T(rows + k, k) = Scalar(1);
    T(rows + k, n + rows + k) = Scalar(1);
    T(rows + k, rhs_col) = upper(k);
    basis[static_cast<size_t>(rows + k)] = n + rows + k;
  }

  Result<Scalar> result;

  auto pivot = [&](Eigen::Index r, Eigen::Index c) {
    T.row(r) /= T(r, c);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != r && T(i, c) != Scalar(0)) T.row(i) -= T(i, c) * T.row(r);
    }
    basis[static_cast<size_t>(r)] = c;
    ++result.pivots;
  };

  // Runs Bland's rule over columns [0, active_cols). Returns false on unboundedness.
  auto run = [&](Eigen::Index active_cols) -> Status {
    while (true) {
      if (result.pivots >= options.max_pivots) return Status::kIterationLimit;
      Eigen::Index enter = -1;
      for (Eigen::Index c = 0; c < active_cols; ++c) {
        if (T(m, c) < -options.pivot_eps) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return Status::kOptimal;
      Eigen::Index leave = -1;
      Scalar best = std::numeric_limits<Scalar>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        if (T(i, enter) > options.pivot_eps) {
          Scalar ratio = T(i, rhs_col) / T(i, enter);
          if (ratio < best - options.pivot_eps ||
              (std::abs(ratio - best) <= options.pivot_eps && leave >= 0 &&
               basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return Status::kUnbounded;
      pivot(leave, enter);
    }
  };

  // Phase 1: minimise the sum of artificials.
  if (n_art > 0) {
    for (Eigen::Index a = 0; a < n_art; ++a) T(m, n + rows + n + a) = Scalar(1);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (basis[static_cast<size_t>(i)] >= n + rows + n) T.row(m) -= T.row(i);
    }
    Status s = run(cols);
    if (s == Status::kIterationLimit) {
      result.status = s;
      return result;
    }
    if (-T(m, rhs_col) > options.tol * std::max(Scalar(1), rhs.cwiseAbs().maxCoeff())) {
      result.status = Status::kInfeasible;
      return result;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (Eigen::Index i = 0; i < m; ++i) {
      if (basis[static_cast<size_t>(i)] < n + rows + n) continue;
      for (Eigen::Index c = 0; c < n + rows + n; ++c) {
        if (std::abs(T(i, c)) > options.pivot_eps) {
          pivot(i, c);
          break;
        }
      }
    }
  }

  // Phase 2: original objective over non-artificial columns.
  T.row(m).setZero();
  T.row(m).head(n) = cost.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index b = basis[static_cast<size_t>(i)];
    if (b < n && cost(b) != Scalar(0)) T.row(m) -= cost(b) * T.row(i);
  }
  // Artificial columns are frozen by only scanning the first n + rows + n columns.
  Status s = run(n + rows + n);
  result.status = s;
  if (s != Status::kOptimal) return result;

  result.x = Vector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index b = basis[static_cast<size_t>(i)];
    if (b < n) result.x(b) = T(i, rhs_col);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    result.x(k) = std::clamp(result.x(k), Scalar(0), upper(k));
  }
  result.objective = cost.dot(result.x);
  return result;
}

}  // namespace capcover::lp
