#pragma once

// Compressed sparse row matrices and the symmetric positive (semi)definite solvers used by
// the cell problems and the implicit wave step: Jacobi-preconditioned conjugate gradients,
// with a direct tridiagonal path for 1D operators.

#include <cstddef>
#include <span>
#include <vector>

namespace homog {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Duplicate (row, col) entries are summed; exact zeros are kept out of the pattern.
  static CsrMatrix from_triplets(std::size_t n, std::vector<Triplet> triplets);

  std::size_t rows() const noexcept { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> diagonal() const;
  double at(std::size_t i, std::size_t j) const;
  /// max |a_ij - a_ji|
  double max_asymmetry() const;

  /// shift * I + scale * A
  CsrMatrix shifted(double shift, double scale) const;

  /// Nonzeros only on |i - j| <= 1.
  bool is_tridiagonal() const;
  /// Tridiagonal plus the corner entries (0, n-1), (n-1, 0).
  bool is_cyclic_tridiagonal() const;

  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> columns() const noexcept { return cols_; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

enum class SolverKind { automatic, conjugate_gradient, direct };

struct SolverOptions {
  /// Relative residual target ||b - A x|| / ||b||.
  double tolerance = 1e-10;
  /// 0 selects 50 * sqrt(unknowns).
  std::size_t max_iterations = 0;
  /// Singular operator with constant nullspace: work on mean-zero vectors.
  bool zero_mean = false;
  SolverKind kind = SolverKind::automatic;
};

struct SolveReport {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  bool direct = false;
};

/// Solver bound to one matrix; factorizations (direct path) are computed once.
class SpdSolver {
 public:
  SpdSolver(CsrMatrix matrix, SolverOptions options = {});

  /// On entry `x` is the initial guess (ignored by the direct path).
  /// Throws SolverError when the iteration cap is hit.
  SolveReport solve(std::span<const double> b, std::span<double> x) const;

  const CsrMatrix& matrix() const noexcept { return a_; }
  const SolverOptions& options() const noexcept { return options_; }
  bool uses_direct() const noexcept { return direct_; }

 private:
  SolveReport solve_cg(std::span<const double> b, std::span<double> x) const;
  void solve_direct(std::span<const double> b, std::span<double> x) const;

  CsrMatrix a_;
  SolverOptions options_;
  std::vector<double> inv_diag_;
  bool direct_ = false;
  bool pinned_ = false;  // cyclic singular system solved with x[0] = 0
  // Thomas factorization of the (possibly pinned) tridiagonal system.
  std::vector<double> lower_, upper_, denom_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// Subtracts the arithmetic mean.
void project_mean_zero(std::span<double> v);

}  // namespace homog
