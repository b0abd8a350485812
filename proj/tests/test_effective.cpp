#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "homog/effective.hpp"
#include "homog/errors.hpp"
#include "oracles.hpp"

using namespace homog;

namespace {

const double kX1[1] = {0.5};
const double kX2[2] = {0.5, 0.5};

Profile a_per() { return Profile(1, 2.0).add_cos(1.0, {1.0}); }
MatrixField periodic_1d() { return MatrixField::isotropic(a_per(), 1.0); }

}  // namespace

TEST_CASE("constant diagonal tensor is reproduced exactly") {
  const double d[2] = {2.0, 3.0};
  const auto a = MatrixField::constant(Tensor::diagonal(d), 1.0);
  for (double R : {1.0, 2.0, 4.0}) {
    const auto t = assemble_effective_truncated(a, kX2, R, static_cast<std::size_t>(16 * R));
    CHECK(std::abs(t.value(0, 0) - 2.0) <= 1e-10);
    CHECK(std::abs(t.value(1, 1) - 3.0) <= 1e-10);
    CHECK(std::abs(t.value(0, 1)) <= 1e-10);
    CHECK(t.provenance == Provenance::truncated);
  }
  const auto p = assemble_effective_periodic(MatrixField::constant(Tensor::identity(2), 1.0), kX2, 16);
  CHECK(max_abs_diff(p.value, Tensor::identity(2)) == 0.0);
  CHECK(p.provenance == Provenance::exact_periodic);
}

TEST_CASE("periodic 1D equals the harmonic mean") {
  const double ref = oracle::harmonic_mean(oracle::a_periodic, 0.0, 1.0, 4096);
  CHECK(ref == doctest::Approx(oracle::sqrt3()).epsilon(1e-12));
  const auto t = assemble_effective_periodic(periodic_1d(), kX1, 1024);
  CHECK(std::abs(t.value(0, 0) - ref) <= 1e-4);
  CHECK(t.symmetric);
  CHECK(t.elliptic);
}

TEST_CASE("Voigt-Reuss sandwich") {
  for (const auto& a : {a_per(), Profile(1, 3.0).add_cos(2.0, {1.0}).add_sin(0.5, {2.0})}) {
    const auto mb = mean_bounds(a, 4.0, 256);
    const double h = oracle::harmonic_mean([&](double y) { return a(y); }, 0.0, 1.0, 4096);
    const double ar = oracle::arithmetic_mean([&](double y) { return a(y); }, 0.0, 1.0, 4096);
    CHECK(mb.harmonic == doctest::Approx(h).epsilon(1e-10));
    CHECK(mb.arithmetic == doctest::Approx(ar).epsilon(1e-10));
    const auto t = assemble_effective_periodic(MatrixField::isotropic(a, 0.5), kX1, 256);
    CHECK(h <= t.value(0, 0) + 1e-12);
    CHECK(t.value(0, 0) < ar);
  }
  // laminate: harmonic along the lamination, arithmetic across
  const auto a = Profile(2, 2.0).add_cos(1.0, {1.0, 0.0});
  const auto t = assemble_effective_periodic(MatrixField::diagonal({a, a}, 1.0), kX2, 64);
  CHECK(t.value(0, 0) == doctest::Approx(oracle::sqrt3()).epsilon(1e-6));
  CHECK(t.value(1, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.value(0, 0) < t.value(1, 1));
}

TEST_CASE("truncated 1D tensors approach sqrt3") {
  for (double R : {4.0, 8.0, 16.0, 32.0}) {
    const auto t = assemble_effective_truncated(periodic_1d(), kX1, R, static_cast<std::size_t>(128 * R), 1e-10,
                                                AveragingWindow::interior());
    CHECK(std::abs(t.value(0, 0) - oracle::sqrt3()) <= 1e-3);
  }
}

TEST_CASE("truncated laminate tends to diag(sqrt3, 2)") {
  const auto a = Profile(2, 2.0).add_cos(1.0, {1.0, 0.0});
  const auto t = assemble_effective_truncated(MatrixField::diagonal({a, a}, 1.0), kX2, 4.0, 128, 1e-10,
                                              AveragingWindow::interior());
  CHECK(t.value(0, 0) == doctest::Approx(oracle::sqrt3()).epsilon(1e-2));
  CHECK(t.value(1, 1) == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(std::abs(t.value(0, 1)) < 1e-6);
  CHECK(std::abs(t.value(1, 0)) < 1e-6);
}

TEST_CASE("averaging window larger than the box") {
  CHECK_THROWS_AS(assemble_effective_truncated(periodic_1d(), kX1, 4.0, 256, 1e-10, AveragingWindow{1.5}),
                  ArgumentError);
  CHECK_THROWS_AS(assemble_effective_truncated(periodic_1d(), kX1, 4.0, 256, 1e-10, AveragingWindow{0.0}),
                  ArgumentError);
}

TEST_CASE("periodic assembly rejects non-periodic fields") {
  const auto qp = MatrixField::isotropic(Profile(1, 2.5).add_cos(1.0, {std::sqrt(2.0)}), 1.0);
  CHECK_THROWS_AS(assemble_effective_periodic(qp, kX1, 64), InputError);
}

TEST_CASE("convergence study: constant field has zero errors") {
  const double d[2] = {2.0, 3.0};
  const double radii[] = {1, 2, 4};
  ConvergenceOptions opt;
  opt.points_per_unit = 8;
  const auto rec = convergence_study(MatrixField::constant(Tensor::diagonal(d), 1.0), kX2, radii, opt);
  for (const auto& e : rec.entries) {
    CHECK(e.error == 0.0);
    CHECK(e.cauchy == 0.0);
  }
  const double two[] = {1, 2};
  CHECK_THROWS_AS(convergence_study(MatrixField::constant(Tensor::diagonal(d), 1.0), kX2, two, opt),
                  ArgumentError);
  const double unsorted[] = {1, 4, 2};
  CHECK_THROWS_AS(convergence_study(MatrixField::constant(Tensor::diagonal(d), 1.0), kX2, unsorted, opt),
                  ArgumentError);
  opt.reference = ReferenceKind::oracle;
  CHECK_THROWS_AS(convergence_study(MatrixField::constant(Tensor::diagonal(d), 1.0), kX2, radii, opt),
                  ArgumentError);
}

TEST_CASE("convergence study: periodic reference and record invariants") {
  const double radii[] = {2, 4, 8};
  ConvergenceOptions opt;
  opt.reference = ReferenceKind::periodic;
  opt.periodic_cells = 512;
  const auto rec = convergence_study(periodic_1d(), kX1, radii, opt);
  CHECK(rec.reference(0, 0) == doctest::Approx(oracle::sqrt3()).epsilon(1e-10));
  for (std::size_t i = 0; i < rec.entries.size(); ++i) {
    const auto& e = rec.entries[i];
    CHECK(e.error >= 0.0);
    CHECK(e.error < 1e-10);
    if (i) CHECK(e.radius > rec.entries[i - 1].radius);
    CHECK(e.cells == static_cast<std::size_t>(2 * e.radius * 64));
  }
}

TEST_CASE("quasi-periodic Cauchy differences decrease towards the harmonic mean") {
  const auto a = MatrixField::isotropic(Profile(1, 2.5).add_cos(1.0, {1.0}).add_cos(1.0, {std::sqrt(2.0)}), 0.5);
  const double radii[] = {8, 16, 32, 64};
  ConvergenceOptions opt;
  opt.threads = 2;
  const auto rec = convergence_study(a, kX1, radii, opt);
  CHECK(rec.cauchy_decreasing);
  const double ref = oracle::harmonic_mean(oracle::a_quasi, -2000, 2000, 4000 * 256);
  CHECK(std::abs(rec.entries.back().interior.value(0, 0) - ref) < 1e-2);

  // thread count does not change the record
  opt.threads = 1;
  const auto serial = convergence_study(a, kX1, radii, opt);
  for (std::size_t i = 0; i < rec.entries.size(); ++i)
    CHECK(serial.entries[i].interior.value(0, 0) == rec.entries[i].interior.value(0, 0));
}

TEST_CASE("averaged nonlinearities") {
  const SeparableTerm f{Profile(1, 2.0).add_cos(1.0, {1.0}), Profile(1, 1.0).add_cos(1.0, {1.0})};
  const SeparableTerm g{Profile::constant(1.0), Profile(1, 2.0).add_sin(1.0, {1.0})};
  const DriftField drift(f);
  const auto diff = DiffusionField::inverse_square_weights(g, 3);
  const auto avg = average_nonlinearities(drift, diff, 4.0, 64);
  const auto ex = exact_nonlinearities(drift, diff);
  for (double l : {-2.0, -0.3, 0.0, 0.5, 1.7}) {
    CHECK(avg.drift(l) == doctest::Approx(2.0 * l).epsilon(1e-12));
    CHECK(ex.drift(l) == doctest::Approx(2.0 * l).epsilon(1e-15));
    CHECK(avg.drift_table(l) == doctest::Approx(2.0 * l).epsilon(1e-12));
    for (std::size_t k = 0; k < 3; ++k) {
      const double sigma = 1.0 / double((k + 1) * (k + 1));
      CHECK(avg.mode(k, l) == doctest::Approx(2.0 * sigma * l).epsilon(1e-12));
      CHECK(avg.mode_tables[k](l) == doctest::Approx(2.0 * sigma * l).epsilon(1e-12));
    }
  }
  CHECK(avg.drift(0.0) == 0.0);
  CHECK(avg.mode(0, 0.0) == 0.0);
  CHECK(avg.drift_table.max_slope() <= drift.lipschitz());
  for (const auto& t : avg.mode_tables) CHECK(t.max_slope() <= diff.lipschitz());
  // 2D (y, tau) quadrature cross-check of the drift mean
  const double joint = oracle::simpson([&](double t) {
    return oracle::simpson([&](double y) { return f(std::span<const double>(&y, 1), t, 1.0); }, 0, 1, 256);
  }, 0, 1, 256);
  CHECK(joint == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("lambda probes") {
  const double extra[] = {0.25, 1.0, 3.0};
  const auto p = default_lambda_probes(extra);
  CHECK(p == std::vector<double>{-2, -1, -0.5, 0, 0.25, 0.5, 1, 2, 3});
  const auto tanh_term = SeparableTerm{Profile(1, 1.5).add_cos(0.5, {1.0}), Profile::constant(1.0), Response::tanh};
  const auto nl = exact_nonlinearities(DriftField(tanh_term), DiffusionField::zero(1));
  CHECK(nl.drift_table(0.5) == doctest::Approx(1.5 * std::tanh(0.5)));
}
