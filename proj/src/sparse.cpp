#include "homog/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "homog/errors.hpp"

namespace homog {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void project_mean_zero(std::span<double> v) {
  if (v.empty()) return;
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= m;
}

// ---------------------------------------------------------------------------

CsrMatrix CsrMatrix::from_triplets(std::size_t n, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m;
  m.row_ptr_.assign(n + 1, 0);
  std::size_t k = 0;
  for (std::size_t row = 0; row < n; ++row) {
    while (k < triplets.size() && triplets[k].row == row) {
      const std::size_t col = triplets[k].col;
      if (col >= n) throw ArgumentError("triplet column out of range");
      double v = 0.0;
      while (k < triplets.size() && triplets[k].row == row && triplets[k].col == col)
        v += triplets[k++].value;
      if (v != 0.0) {
        m.cols_.push_back(col);
        m.values_.push_back(v);
      }
    }
    m.row_ptr_[row + 1] = m.cols_.size();
  }
  if (k != triplets.size()) throw ArgumentError("triplet row out of range");
  return m;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[cols_[k]];
    y[i] = s;
  }
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(rows(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i) d[i] = at(i, i);
  return d;
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  return it != last && *it == j ? values_[static_cast<std::size_t>(it - cols_.begin())] : 0.0;
}

double CsrMatrix::max_asymmetry() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      m = std::max(m, std::abs(values_[k] - at(cols_[k], i)));
  return m;
}

CsrMatrix CsrMatrix::shifted(double shift, double scale) const {
  std::vector<Triplet> t;
  t.reserve(values_.size() + rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    t.push_back({i, i, shift});
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      t.push_back({i, cols_[k], scale * values_[k]});
  }
  return from_triplets(rows(), std::move(t));
}

bool CsrMatrix::is_tridiagonal() const {
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const std::size_t j = cols_[k];
      if ((i > j ? i - j : j - i) > 1) return false;
    }
  return true;
}

bool CsrMatrix::is_cyclic_tridiagonal() const {
  const std::size_t n = rows();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const std::size_t j = cols_[k];
      const std::size_t d = i > j ? i - j : j - i;
      if (d > 1 && d != n - 1) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------

SpdSolver::SpdSolver(CsrMatrix matrix, SolverOptions options)
    : a_(std::move(matrix)), options_(options) {
  const std::size_t n = a_.rows();
  if (n == 0) return;
  if (options_.max_iterations == 0)
    options_.max_iterations =
        std::max<std::size_t>(1, static_cast<std::size_t>(50.0 * std::sqrt(double(n))));

  const bool want_direct = options_.kind != SolverKind::conjugate_gradient;
  if (want_direct && !options_.zero_mean && a_.is_tridiagonal()) {
    direct_ = true;
  } else if (want_direct && options_.zero_mean && a_.is_cyclic_tridiagonal()) {
    direct_ = true;
    pinned_ = true;
  } else if (options_.kind == SolverKind::direct) {
    throw ArgumentError("direct solver requested for a non-tridiagonal operator");
  }

  if (direct_) {
    // Unknowns [first, n): pinned systems drop row/column 0 (x[0] = 0).
    const std::size_t first = pinned_ ? 1 : 0;
    const std::size_t m = n - first;
    lower_.assign(m, 0.0);
    upper_.assign(m, 0.0);
    denom_.assign(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      const std::size_t i = r + first;
      const double diag = a_.at(i, i);
      lower_[r] = r > 0 ? a_.at(i, i - 1) : 0.0;
      const double up = r + 1 < m ? a_.at(i, i + 1) : 0.0;
      // modified upper coefficient c'_r and pivot
      const double pivot = r > 0 ? diag - lower_[r] * upper_[r - 1] : diag;
      if (!(std::abs(pivot) > 0.0))
        throw SolverError("zero pivot in tridiagonal factorization", HUGE_VAL, 0);
      denom_[r] = pivot;
      upper_[r] = up / pivot;
    }
  } else {
    inv_diag_ = a_.diagonal();
    for (double& d : inv_diag_) {
      if (!(d > 0.0)) throw SolverError("non-positive diagonal in SPD operator", HUGE_VAL, 0);
      d = 1.0 / d;
    }
  }
}

void SpdSolver::solve_direct(std::span<const double> b, std::span<double> x) const {
  const std::size_t first = pinned_ ? 1 : 0;
  const std::size_t m = denom_.size();
  std::vector<double> y(m);
  for (std::size_t r = 0; r < m; ++r) {
    const double prev = r > 0 ? y[r - 1] : 0.0;
    y[r] = (b[r + first] - lower_[r] * prev) / denom_[r];
  }
  for (std::size_t r = m; r-- > 0;) {
    if (r + 1 < m) y[r] -= upper_[r] * y[r + 1];
  }
  if (pinned_) x[0] = 0.0;
  for (std::size_t r = 0; r < m; ++r) x[r + first] = y[r];
  if (pinned_) project_mean_zero(x);
}

SolveReport SpdSolver::solve(std::span<const double> b_in, std::span<double> x) const {
  const std::size_t n = a_.rows();
  if (b_in.size() != n || x.size() != n) throw ArgumentError("solver vector size mismatch");
  SolveReport report;
  if (n == 0) return report;

  std::vector<double> b(b_in.begin(), b_in.end());
  if (options_.zero_mean) project_mean_zero(b);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return report;
  }
  if (!direct_) return solve_cg(b, x);

  solve_direct(b, x);
  std::vector<double> r(n);
  a_.multiply(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  if (options_.zero_mean) project_mean_zero(r);
  report.direct = true;
  report.iterations = 1;
  report.relative_residual = norm2(r) / bnorm;
  return report;
}

SolveReport SpdSolver::solve_cg(std::span<const double> b, std::span<double> x) const {
  const std::size_t n = a_.rows();
  const bool zm = options_.zero_mean;
  const double bnorm = norm2(b);
  const double target = options_.tolerance * bnorm;
  std::vector<double> r(n), z(n), p(n), ap(n);

  if (zm) project_mean_zero(x);
  const auto true_residual = [&] {
    a_.multiply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    if (zm) project_mean_zero(r);
    return norm2(r);
  };
  const auto precondition = [&] {
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag_[i] * r[i];
    if (zm) project_mean_zero(z);
  };

  double dmax = 0.0;
  for (double d : inv_diag_) dmax = std::max(dmax, 1.0 / d);

  double rnorm = true_residual();
  std::size_t it = 0;
  while (rnorm > target) {
    // (re)start
    precondition();
    p = z;
    double rz = dot(r, z);
    while (it < options_.max_iterations) {
      a_.multiply(p, ap);
      const double pap = dot(p, ap);
      const double pp = dot(p, p);
      if (pp < 1e-200 || std::abs(pap) <= 1e-14 * dmax * pp) {  // roundoff floor: restart
        ++it;
        break;
      }
      if (!(pap > 0.0)) throw SolverError("operator is not positive definite", rnorm / bnorm, it);
      const double step = rz / pap;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += step * p[i];
        r[i] -= step * ap[i];
      }
      if (zm) project_mean_zero(r);
      ++it;
      rnorm = norm2(r);
      if (rnorm <= target) break;
      precondition();
      const double rz_new = dot(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    if (zm) project_mean_zero(x);
    rnorm = true_residual();
    if (rnorm > target && it >= options_.max_iterations)
      throw SolverError("conjugate gradients hit the iteration cap",
                        rnorm / bnorm, it);
  }
  return {it, rnorm / bnorm, false};
}

}  // namespace homog
