#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "homog/errors.hpp"

namespace homog {

/// Maximum spatial dimension handled by the library.
inline constexpr std::size_t kMaxDim = 2;

/// Small dense N x N matrix, N in {1, 2}; row-major storage.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::size_t dim) : dim_(check(dim)) {}

  static Tensor identity(std::size_t dim) {
    Tensor t(dim);
    for (std::size_t i = 0; i < dim; ++i) t(i, i) = 1.0;
    return t;
  }
  static Tensor diagonal(std::span<const double> diag) {
    Tensor t(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) t(i, i) = diag[i];
    return t;
  }
  static Tensor scalar(double value) {
    Tensor t(1);
    t(0, 0) = value;
    return t;
  }

  std::size_t dim() const noexcept { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return v_[i * kMaxDim + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v_[i * kMaxDim + j]; }

  /// y = A x, both of length dim().
  void apply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < dim_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
  }

  /// Quadratic form xi . A xi.
  double quadratic(std::span<const double> xi) const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) s += xi[i] * (*this)(i, j) * xi[j];
    return s;
  }

  Tensor transpose() const {
    Tensor t(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  /// Entrywise max-norm of the difference.
  friend double max_abs_diff(const Tensor& a, const Tensor& b) {
    if (a.dim_ != b.dim_) throw ArgumentError("tensor dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim_; ++i)
      for (std::size_t j = 0; j < a.dim_; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
  }

 private:
  static std::size_t check(std::size_t dim) {
    if (dim < 1 || dim > kMaxDim) throw ArgumentError("tensor dimension must be 1 or 2");
    return dim;
  }

  std::size_t dim_ = 1;
  std::array<double, kMaxDim * kMaxDim> v_{};
};

/// ||A - A^T||_inf (entrywise max).
inline double symmetry_defect(const Tensor& a) { return max_abs_diff(a, a.transpose()); }

/// Minimum of xi.A xi over `directions` unit vectors equally spaced on the upper half circle
/// (a single probe e_1 in 1D).
inline double min_rayleigh_quotient(const Tensor& a, std::size_t directions = 64) {
  if (a.dim() == 1) return a(0, 0);
  double m = HUGE_VAL;
  for (std::size_t k = 0; k < directions; ++k) {
    const double theta = M_PI * static_cast<double>(k) / static_cast<double>(directions);
    const std::array<double, 2> xi{std::cos(theta), std::sin(theta)};
    m = std::min(m, a.quadratic(xi));
  }
  return m;
}

}  // namespace homog
