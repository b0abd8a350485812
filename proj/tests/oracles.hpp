#pragma once

// Independent reference values for the tests. Nothing here calls the library's quadrature
// or solvers: integrals use composite Simpson rules, solutions are closed forms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

/// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// (mean of 1/a over [a0, b0])^-1
inline double harmonic_mean(const std::function<double(double)>& a, double a0, double b0,
                            int panels) {
  return (b0 - a0) / simpson([&](double y) { return 1.0 / a(y); }, a0, b0, panels);
}

inline double arithmetic_mean(const std::function<double(double)>& a, double a0, double b0,
                              int panels) {
  return simpson(a, a0, b0, panels) / (b0 - a0);
}

/// a(y) = 2 + cos(2 pi y)
inline double a_periodic(double y) { return 2.0 + std::cos(2.0 * kPi * y); }
/// a(y) = 2.5 + cos(2 pi y) + cos(2 sqrt2 pi y)
inline double a_quasi(double y) {
  return 2.5 + std::cos(2.0 * kPi * y) + std::cos(2.0 * std::sqrt(2.0) * kPi * y);
}

/// sqrt(2^2 - 1): closed form of the harmonic mean of 2 + cos.
inline double sqrt3() { return std::sqrt(3.0); }

/// Dirichlet corrector on [-R, R] in 1D: chi' = c / a - 1 with c = 2R / int 1/a,
/// sampled at `y` (sorted ascending) by cumulative Simpson on each gap.
inline std::vector<double> dirichlet_corrector_1d(const std::function<double(double)>& a,
                                                  double R, const std::vector<double>& y,
                                                  int panels_per_gap = 16) {
  const auto inv = [&](double s) { return 1.0 / a(s); };
  const double c = 2.0 * R / simpson(inv, -R, R, static_cast<int>(4096 * R));
  std::vector<double> out;
  double acc = 0.0, prev = -R;
  for (double yi : y) {
    if (yi > prev) {
      const int n = std::max(panels_per_gap, static_cast<int>(std::ceil((yi - prev) * 512)));
      acc += simpson(inv, prev, yi, n);
    }
    prev = yi;
    out.push_back(c * acc - (yi + R));
  }
  return out;
}

/// Free standing wave on (0,1) with unit speed: u = sin(pi x) cos(pi t).
inline double standing_wave(double x, double t) { return std::sin(kPi * x) * std::cos(kPi * t); }

/// Energy of u0 = sin(pi x), u1 = 0, A = 1: int (pi cos pi x)^2 / 2 = pi^2 / 4.
inline double standing_wave_energy() { return kPi * kPi / 4.0; }

}  // namespace oracle
