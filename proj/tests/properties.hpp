#pragma once

// Hand-rolled generators of admissible inputs and the invariant checks run over them.
// Shared by the property tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "homog/cell_problem.hpp"
#include "homog/effective.hpp"
#include "homog/fields.hpp"
#include "homog/noise.hpp"
#include "homog/wave.hpp"

namespace prop {

struct Outcome {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void fail(std::size_t c, const std::string& why) {
    if (failures++ == 0) first_failure = "case " + std::to_string(c) + ": " + why;
  }
  bool ok() const { return cases >= 100 && failures == 0; }
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  std::uint64_t u64() { return rng_(); }

  std::vector<double> frequency(std::size_t dim, bool periodic) {
    std::vector<double> k(dim);
    do {
      for (auto& v : k) v = integer(-2, 2);
    } while (std::all_of(k.begin(), k.end(), [](double v) { return v == 0.0; }));
    if (!periodic) k[0] = k[0] == 0.0 ? std::sqrt(2.0) : k[0] * std::sqrt(2.0);
    return k;
  }

  /// c + amp cos(2 pi k.y + phase) (+ a second term), inf >= c - total amplitude.
  homog::Profile oscillating(std::size_t dim, double c, double total_amp, bool periodic) {
    homog::Profile p(dim, c);
    const double a1 = uniform(0.0, total_amp);
    p.add_cos(a1, frequency(dim, periodic), uniform(0.0, 6.3));
    if (coin()) p.add_sin(uniform(0.0, total_amp - a1), frequency(dim, periodic));
    return p;
  }

  /// Symmetric, alpha = 0.5: diagonal entries >= 1.2, |a12| <= 0.5.
  homog::MatrixField matrix_field(std::size_t dim, bool periodic, bool full = true) {
    std::vector<homog::Profile> upper{oscillating(dim, uniform(2.0, 3.0), 0.8, periodic)};
    if (dim == 2) {
      upper.push_back(full ? oscillating(dim, 0.0, 0.5, periodic) : homog::Profile(dim, 0.0));
      upper.push_back(oscillating(dim, uniform(2.0, 3.0), 0.8, periodic));
    }
    return homog::MatrixField(dim, std::move(upper), 0.5);
  }

  homog::Response response() {
    switch (integer(0, 2)) {
      case 0: return homog::Response::linear;
      case 1: return homog::Response::sine;
      default: return homog::Response::tanh;
    }
  }

  homog::SeparableTerm term(std::size_t dim) {
    homog::SeparableTerm t;
    t.space = oscillating(dim, uniform(0.5, 2.0), 0.4, coin());
    t.time = oscillating(1, uniform(0.5, 2.0), 0.4, coin());
    if (coin()) t.time.add_decay(uniform(0.0, 1.0), homog::DecayShape::gaussian, uniform(0.5, 2.0));
    t.response = response();
    t.scale = uniform(-1.5, 1.5);
    return t;
  }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// -- invariants -------------------------------------------------------------

/// A(x, y) symmetric at random points, and the periodic effective tensor symmetric.
inline Outcome symmetry(std::size_t cases, std::uint64_t seed) {
  Outcome o{"symmetry"};
  Gen g(seed);
  const double tol = 1e-10;
  for (std::size_t c = 0; c < cases; ++c, ++o.cases) {
    const auto a = g.matrix_field(2, true);
    for (int k = 0; k < 8; ++k) {
      const double x[2] = {g.uniform(0, 1), g.uniform(0, 1)};
      const double y[2] = {g.uniform(-50, 50), g.uniform(-50, 50)};
      const auto t = a(x, y);
      if (t(0, 1) != t(1, 0)) o.fail(c, "A(x,y) not exactly symmetric");
    }
    const double x[2] = {0.5, 0.5};
    const auto eff = homog::assemble_effective_periodic(a, x, 12, tol);
    if (!(eff.symmetry_defect <= 10 * tol))
      o.fail(c, "effective symmetry defect " + std::to_string(eff.symmetry_defect));
  }
  return o;
}

/// Ellipticity floor of the field (probe) and of the effective tensor.
inline Outcome ellipticity(std::size_t cases, std::uint64_t seed) {
  Outcome o{"ellipticity floor"};
  Gen g(seed);
  const double tol = 1e-10;
  for (std::size_t c = 0; c < cases; ++c, ++o.cases) {
    const std::size_t dim = g.coin() ? 2 : 1;
    const bool periodic = g.coin();
    const auto a = g.matrix_field(dim, periodic);
    const double x[2] = {0.5, 0.5};
    const std::span<const double> xs(x, dim);
    if (homog::probe_ellipticity(a, xs, 20.0, 9, 64, c) < a.alpha()) o.fail(c, "field below alpha");
    const auto eff = periodic ? homog::assemble_effective_periodic(a, xs, dim == 1 ? 64 : 12, tol)
                              : homog::assemble_effective_truncated(a, xs, 3.0, dim == 1 ? 192 : 18, tol);
    if (!(eff.min_rayleigh >= a.alpha() * (1 - 10 * tol)))
      o.fail(c, "effective Rayleigh quotient " + std::to_string(eff.min_rayleigh));
    if (!eff.elliptic) o.fail(c, "elliptic flag not set");
  }
  return o;
}

/// Zero data stays exactly zero under admissible drift/diffusion with noise.
inline Outcome zero_preservation(std::size_t cases, std::uint64_t seed) {
  Outcome o{"zero-preservation"};
  Gen g(seed);
  for (std::size_t c = 0; c < cases; ++c, ++o.cases) {
    const std::size_t dim = c % 5 == 0 ? 2 : 1;
    const auto a = g.matrix_field(dim, g.coin(), false);
    const homog::DriftField f(g.term(dim));
    const auto gd = homog::DiffusionField::inverse_square_weights(g.term(dim), 1 + g.integer(0, 3));
    const double eps = 1.0 / g.integer(2, 6);
    const std::size_t cells = dim == 1 ? 64 : 16;
    const auto p = homog::oscillatory_problem(a, f, gd, eps, cells);
    const homog::WaveSolver solver(p, 1.0 / 64);
    homog::WaveState s{std::vector<double>(p.unknowns(), 0.0), std::vector<double>(p.unknowns(), 0.0), 0.0};
    const auto inc = homog::BrownianIncrements::generate(g.u64(), c, gd.modes(), 16, 1.0 / 64);
    for (std::size_t n = 0; n < 16; ++n) solver.step(s, inc.at(n));
    if (max_abs(s.u) != 0.0 || max_abs(s.v) != 0.0) o.fail(c, "state left zero");
  }
  return o;
}

/// Identical (seed, inputs) give bitwise identical increments and trajectories.
inline Outcome seed_determinism(std::size_t cases, std::uint64_t seed) {
  Outcome o{"seed determinism"};
  Gen g(seed);
  for (std::size_t c = 0; c < cases; ++c, ++o.cases) {
    const std::uint64_t s0 = g.u64();
    const std::uint64_t path = g.u64() % 1000;
    const auto a = homog::BrownianIncrements::generate(s0, path, 3, 200, 0.01);
    const auto b = homog::BrownianIncrements::generate(s0, path, 3, 200, 0.01);
    if (a.values() != b.values()) o.fail(c, "increment streams differ");
    const auto other = homog::BrownianIncrements::generate(s0, path + 1, 3, 200, 0.01);
    if (other.values() == a.values()) o.fail(c, "distinct paths share a stream");

    const auto field = g.matrix_field(1, true);
    const homog::DriftField f(g.term(1));
    const auto gd = homog::DiffusionField::inverse_square_weights(g.term(1), 3);
    const auto p = homog::oscillatory_problem(field, f, gd, 0.25, 32);
    const homog::WaveSolver solver(p, 0.01);
    const auto init = homog::initial_state(p, homog::Profile(1).add_sin(1.0, {0.5}),
                                           homog::Profile::constant(0.0, 1));
    const auto r1 = solver.run(init, 1.0, 10, &a, true);
    const auto r2 = solver.run(init, 1.0, 10, &b, true);
    if (r1.snapshots != r2.snapshots || r1.final.v != r2.final.v) o.fail(c, "trajectories differ");
  }
  return o;
}

/// chi(xi1 + xi2) = chi(xi1) + chi(xi2) within 10 tol (relative to the solution size).
inline Outcome corrector_linearity(std::size_t cases, std::uint64_t seed) {
  Outcome o{"corrector linearity"};
  Gen g(seed);
  const double tol = 1e-10;
  for (std::size_t c = 0; c < cases; ++c, ++o.cases) {
    const std::size_t dim = g.coin() ? 2 : 1;
    const bool periodic = g.coin();
    const auto a = g.matrix_field(dim, periodic);
    const homog::Grid grid = periodic ? homog::Grid::unit_cell(dim, dim == 1 ? 64 : 12)
                                      : homog::Grid::box(dim, 2.0, dim == 1 ? 128 : 16);
    const double x[2] = {0.5, 0.5};
    const homog::CellProblem cp(a, std::span<const double>(x, dim), grid, tol);
    double xi1[2] = {g.uniform(-2, 2), g.uniform(-2, 2)};
    double xi2[2] = {g.uniform(-2, 2), g.uniform(-2, 2)};
    double xi3[2] = {xi1[0] + xi2[0], xi1[1] + xi2[1]};
    const auto s1 = cp.solve(std::span<const double>(xi1, dim));
    const auto s2 = cp.solve(std::span<const double>(xi2, dim));
    const auto s3 = cp.solve(std::span<const double>(xi3, dim));
    double err = 0.0;
    for (std::size_t n = 0; n < s3.chi.size(); ++n)
      err = std::max(err, std::abs(s3.chi[n] - s1.chi[n] - s2.chi[n]));
    const double scale = std::max(1.0, max_abs(s3.chi));
    if (err > 10 * tol * scale) o.fail(c, "superposition error " + std::to_string(err));
  }
  return o;
}

/// Dirichlet correctors vanish on the boundary; periodic correctors have zero mean; wave
/// states vanish on the boundary after every step.
inline Outcome boundary_conditions(std::size_t cases, std::uint64_t seed) {
  Outcome o{"boundary conditions"};
  Gen g(seed);
  const double tol = 1e-10;
  for (std::size_t c = 0; c < cases; ++c, ++o.cases) {
    const std::size_t dim = g.coin() ? 2 : 1;
    const auto a = g.matrix_field(dim, true);
    const double x[2] = {0.5, 0.5};
    const std::span<const double> xs(x, dim);
    const std::size_t j = static_cast<std::size_t>(g.integer(0, static_cast<int>(dim) - 1));
    const auto t = homog::solve_truncated_cell(a, xs, j, g.uniform(1.0, 3.0), dim == 1 ? 96 : 14, tol);
    for (std::size_t n = 0; n < t.chi.size(); ++n)
      if (t.grid.is_boundary(n) && t.chi[n] != 0.0) o.fail(c, "Dirichlet value nonzero");
    const auto p = homog::solve_periodic_cell(a, xs, j, dim == 1 ? 48 : 10, tol);
    if (std::abs(p.mean) > 10 * tol * std::max(1.0, max_abs(p.chi)))
      o.fail(c, "periodic mean " + std::to_string(p.mean));

    const homog::DriftField f(g.term(dim));
    const auto gd = homog::DiffusionField::inverse_square_weights(g.term(dim), 2);
    const auto wp = homog::oscillatory_problem(a, f, gd, 0.5, dim == 1 ? 32 : 8);
    const homog::WaveSolver solver(wp, 1.0 / 32);
    homog::Profile u0 = dim == 1 ? homog::Profile(1).add_sin(1.0, {0.5})
                                 : homog::Profile(2).add_cos(0.5, {0.5, -0.5}).add_cos(-0.5, {0.5, 0.5});
    auto s = homog::initial_state(wp, u0, homog::Profile::constant(0.0, dim));
    const auto inc = homog::BrownianIncrements::generate(g.u64(), c, 2, 8, 1.0 / 32);
    for (std::size_t n = 0; n < 8; ++n) {
      solver.step(s, inc.at(n));
      const auto un = homog::to_nodal(wp, s.u);
      const auto vn = homog::to_nodal(wp, s.v);
      for (std::size_t k = 0; k < un.size(); ++k)
        if (wp.grid.is_boundary(k) && (un[k] != 0.0 || vn[k] != 0.0)) o.fail(c, "wave boundary value");
    }
  }
  return o;
}

}  // namespace prop
