#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "homog/errors.hpp"
#include "homog/noise.hpp"
#include "homog/wave.hpp"
#include "oracles.hpp"

using namespace homog;

namespace {

Profile sine() { return Profile(1).add_sin(1.0, {0.5}); }
Profile zero1() { return Profile::constant(0.0, 1); }

double l2_error_vs(const WaveProblem& p, const WaveSolver& s, const std::vector<double>& u, double t) {
  std::vector<double> d(u.size());
  for (std::size_t k = 0; k < u.size(); ++k)
    d[k] = u[k] - oracle::standing_wave(p.grid.node_point(p.stiffness.node_of[k])[0], t);
  return s.l2(d);
}

MatrixField oscillating_a() { return MatrixField::isotropic(Profile(1, 2.0).add_cos(1.0, {1.0}), 1.0); }

}  // namespace

TEST_CASE("standing wave eigenmode") {
  const auto p = free_wave_problem(Tensor::identity(1), 256);
  const WaveSolver s(p, 1.0 / 1024);
  const auto rec = s.run(initial_state(p, sine(), zero1()), 1.0, 64, nullptr);
  CHECK(rec.final.t == 1.0);
  CHECK(l2_error_vs(p, s, rec.final.u, 1.0) <= 5e-3);
  const double e0 = rec.samples.front().energy;
  for (const auto& m : rec.samples) CHECK(std::abs(m.energy - e0) <= 1e-3 * e0);
}

TEST_CASE("discrete energy") {
  const auto p = free_wave_problem(Tensor::identity(1), 256);
  const WaveSolver s(p, 1.0 / 256);
  WaveState zero{std::vector<double>(p.unknowns(), 0.0), std::vector<double>(p.unknowns(), 0.0), 0.0};
  CHECK(s.energy(zero) == 0.0);
  const double e = s.energy(initial_state(p, sine(), zero1()));
  CHECK(e == doctest::Approx(oracle::standing_wave_energy()).epsilon(1e-4));
}

TEST_CASE("time reversal of the deterministic scheme") {
  const auto a = oscillating_a();
  const auto p = oscillatory_problem(a, DriftField::zero(1), DiffusionField::zero(1), 1.0 / 8, 256);
  const WaveSolver s(p, 1.0 / 512);
  const auto init = initial_state(p, sine(), Profile(1).add_sin(0.5, {1.0}));
  auto fwd = s.run(init, 0.5, 256, nullptr).final;
  for (double& v : fwd.v) v = -v;
  fwd.t = 0.0;
  auto back = s.run(fwd, 0.5, 256, nullptr).final;
  double err = 0.0;
  for (std::size_t k = 0; k < back.u.size(); ++k) err = std::max(err, std::abs(back.u[k] - init.u[k]));
  CHECK(err < 1e-10);
  for (double& v : back.v) v = -v;
  CHECK(s.energy(back) == doctest::Approx(s.energy(init)).epsilon(1e-10));
}

TEST_CASE("oscillating stiffness conserves energy") {
  const auto p = oscillatory_problem(oscillating_a(), DriftField::zero(1), DiffusionField::zero(1), 1.0 / 8, 256);
  const WaveSolver s(p, 1.0 / 1024);
  const auto rec = s.run(initial_state(p, sine(), zero1()), 1.0, 32, nullptr);
  const double e0 = rec.samples.front().energy;
  for (const auto& m : rec.samples) CHECK(std::abs(m.energy - e0) <= 1e-3 * e0);
}

TEST_CASE("zero data stays zero") {
  const DriftField f(SeparableTerm{Profile(1, 2.0).add_cos(1.0, {1.0}), Profile(1, 1.0).add_cos(1.0, {1.0})});
  const auto g = DiffusionField::inverse_square_weights(SeparableTerm{Profile::constant(1.0)}, 4);
  const auto p = oscillatory_problem(oscillating_a(), f, g, 1.0 / 4, 64);
  const WaveSolver s(p, 1.0 / 64);
  const auto inc = BrownianIncrements::generate(3, 0, 4, 64, 1.0 / 64);
  const auto rec = s.run(initial_state(p, zero1(), zero1()), 1.0, 1, &inc);
  for (const auto& m : rec.samples) {
    CHECK(m.h1 == 0.0);
    CHECK(m.l2v == 0.0);
  }
}

TEST_CASE("monitors: sups are running maxima") {
  const auto g = DiffusionField::inverse_square_weights(SeparableTerm{Profile::constant(1.0)}, 4);
  const auto p = oscillatory_problem(oscillating_a(), DriftField::zero(1), g, 1.0 / 4, 64);
  const WaveSolver s(p, 1.0 / 128);
  const auto inc = BrownianIncrements::generate(11, 2, 4, 128, 1.0 / 128);
  const auto rec = s.run(initial_state(p, sine(), zero1()), 1.0, 4, &inc, true);
  CHECK(rec.samples.size() == 33);
  CHECK(rec.snapshots.size() == 33);
  for (std::size_t i = 1; i < rec.samples.size(); ++i) {
    CHECK(rec.samples[i].sup4_h1 >= rec.samples[i - 1].sup4_h1);
    CHECK(rec.samples[i].sup4_l2v >= rec.samples[i - 1].sup4_l2v);
    CHECK(rec.samples[i].sup4_h1 >= std::pow(rec.samples[i].h1, 4) * (1 - 1e-15));
  }
}

TEST_CASE("Brownian increments: variance and reproducibility") {
  const double dt = 1.0 / 100;
  const auto b = BrownianIncrements::generate(42, 7, 4, 5000, dt);
  const auto m = sample_moments(b.values());
  CHECK(m.count == 20000);
  CHECK(std::abs(m.variance - dt) <= 0.05 * dt);
  CHECK(std::abs(m.mean) < 4 * std::sqrt(dt / 20000.0));
  CHECK(BrownianIncrements::generate(42, 7, 4, 5000, dt).values() == b.values());
  CHECK(BrownianIncrements::generate(43, 7, 4, 5000, dt).values() != b.values());
  const double c[3] = {1.0, 2.0, 3.0};
  CHECK(u0_norm(c) == doctest::Approx(std::sqrt(1.0 + 1.0 + 1.0)));
}

TEST_CASE("multiplicative noise: ensemble mean tracks the deterministic run") {
  const auto g = DiffusionField::inverse_square_weights(SeparableTerm{Profile::constant(1.0)}, 16);
  const auto p = free_wave_problem(Tensor::identity(1), 64);
  const auto pn = homogenized_problem(Tensor::identity(1), Profile::constant(1.0, 1), DriftField::zero(1), g, 64);
  const WaveSolver det(p, 1.0 / 128), sto(pn, 1.0 / 128);
  const auto ref = det.run(initial_state(p, sine(), zero1()), 1.0, 32, nullptr, true);
  const std::size_t paths = 256;
  const std::size_t mid = p.unknowns() / 2;
  std::vector<std::vector<double>> vals(ref.snapshots.size());
  for (std::size_t q = 0; q < paths; ++q) {
    const auto inc = BrownianIncrements::generate(5, q, 16, 128, 1.0 / 128);
    const auto r = sto.run(initial_state(pn, sine(), zero1()), 1.0, 32, &inc, true);
    for (std::size_t k = 0; k < r.snapshots.size(); ++k) vals[k].push_back(r.snapshots[k][mid]);
  }
  for (std::size_t k = 1; k < vals.size(); ++k) {
    const auto m = sample_moments(vals[k]);
    CHECK(std::abs(m.mean - ref.snapshots[k][mid]) <= 4.0 * std::sqrt(m.variance / paths));
  }
}

TEST_CASE("moment monitors stay bounded as epsilon decreases") {
  const auto g = DiffusionField::inverse_square_weights(SeparableTerm{Profile::constant(1.0)}, 4);
  const DriftField f(SeparableTerm{Profile(1, 1.0).add_cos(0.5, {1.0})});
  std::vector<double> worst;
  for (double eps : {0.25, 0.125, 0.0625}) {
    const auto p = oscillatory_problem(oscillating_a(), f, g, eps, 256);
    const WaveSolver s(p, 1.0 / 256);
    double m = 0.0;
    for (std::size_t q = 0; q < 64; ++q) {
      const auto inc = BrownianIncrements::generate(9, q, 4, 256, 1.0 / 256);
      const auto r = s.run(initial_state(p, sine(), zero1()), 1.0, 256, &inc);
      m = std::max(m, r.samples.back().sup4_h1);
    }
    CHECK(std::isfinite(m));
    worst.push_back(m);
  }
  const double hi = *std::max_element(worst.begin(), worst.end());
  const double lo = *std::min_element(worst.begin(), worst.end());
  CHECK(hi < 10 * lo);
}

TEST_CASE("step size independent of epsilon") {
  const auto g = DiffusionField::inverse_square_weights(SeparableTerm{Profile::constant(1.0)}, 2);
  for (double eps : {0.25, 1.0 / 32}) {
    const auto p = oscillatory_problem(oscillating_a(), DriftField::zero(1), g, eps, 512);
    const WaveSolver s(p, 1.0 / 64);
    const auto inc = BrownianIncrements::generate(1, 0, 2, 64, 1.0 / 64);
    CHECK_NOTHROW(s.run(initial_state(p, sine(), zero1()), 1.0, 64, &inc));
  }
}

TEST_CASE("errors") {
  const auto p = free_wave_problem(Tensor::identity(1), 32);
  const WaveSolver s(p, 0.3);
  CHECK_THROWS_AS(s.run(initial_state(p, sine(), zero1()), 1.0, 1, nullptr), ArgumentError);
  CHECK_THROWS_AS(step_count(1.0, 0.0), ArgumentError);

  const DriftField huge(SeparableTerm{Profile::constant(1.0), Profile::constant(1.0), Response::linear, 1e306});
  const auto pb = homogenized_problem(Tensor::identity(1), Profile::constant(1.0, 1), huge, DiffusionField::zero(1), 32);
  const WaveSolver sb(pb, 0.5);
  CHECK_THROWS_AS(sb.run(initial_state(pb, sine(), zero1()), 10.0, 1, nullptr), BlowUpError);
}

TEST_CASE("2D eigenmode") {
  const auto u0 = Profile(2).add_cos(0.5, {0.5, -0.5}).add_cos(-0.5, {0.5, 0.5});
  const auto p = free_wave_problem(Tensor::identity(2), 32);
  const WaveSolver s(p, 1.0 / 64);
  const auto rec = s.run(initial_state(p, u0, Profile::constant(0.0, 2)), 0.5, 8, nullptr);
  // u = sin(pi x) sin(pi y) cos(sqrt2 pi t)
  const double c = std::cos(std::sqrt(2.0) * oracle::kPi * 0.5);
  double err = 0.0;
  for (std::size_t k = 0; k < p.unknowns(); ++k) {
    const auto x = p.grid.node_point(p.stiffness.node_of[k]);
    err = std::max(err, std::abs(rec.final.u[k] - std::sin(oracle::kPi * x[0]) * std::sin(oracle::kPi * x[1]) * c));
  }
  CHECK(err < 5e-3);
  CHECK(std::abs(rec.samples.back().energy - rec.samples.front().energy) < 1e-10 * rec.samples.front().energy);
}
