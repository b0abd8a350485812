#include "homog/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace homog {

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::constant: return "constant";
    case Structure::periodic: return "periodic";
    case Structure::quasiperiodic: return "quasiperiodic";
    case Structure::asymptotic: return "asymptotic";
  }
  return "unknown";
}

Structure combine(Structure a, Structure b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

// ---------------------------------------------------------------------------
// Profile

Profile::Profile(std::size_t dimension, double constant)
    : dimension_(dimension), constant_(constant) {
  if (dimension == 0 || dimension > kMaxDim + 1)
    throw ArgumentError("profile dimension must be between 1 and 3");
}

Profile& Profile::add_oscillation(Oscillation osc) {
  if (osc.frequency.size() != dimension_)
    throw ArgumentError("oscillation frequency has " + std::to_string(osc.frequency.size()) +
                        " components, profile dimension is " + std::to_string(dimension_));
  oscillations_.push_back(std::move(osc));
  return *this;
}

Profile& Profile::add_cos(double amplitude, std::vector<double> frequency, double phase) {
  return add_oscillation({amplitude, std::move(frequency), Wave::cosine, phase});
}

Profile& Profile::add_sin(double amplitude, std::vector<double> frequency, double phase) {
  return add_oscillation({amplitude, std::move(frequency), Wave::sine, phase});
}

Profile& Profile::add_decay(double amplitude, DecayShape shape, double scale) {
  if (!(scale > 0.0)) throw ArgumentError("decay scale must be positive");
  decays_.push_back({amplitude, shape, scale});
  return *this;
}

double Profile::operator()(std::span<const double> y) const {
  if (y.size() != dimension_)
    throw ArgumentError("profile evaluated with " + std::to_string(y.size()) +
                        " coordinates, expected " + std::to_string(dimension_));
  double value = constant_;
  for (const auto& osc : oscillations_) {
    double arg = osc.phase;
    for (std::size_t d = 0; d < dimension_; ++d) arg += kTwoPi * osc.frequency[d] * y[d];
    value += osc.amplitude * (osc.wave == Wave::cosine ? std::cos(arg) : std::sin(arg));
  }
  if (!decays_.empty()) {
    double r2 = 0.0;
    for (double c : y) r2 += c * c;
    for (const auto& dec : decays_) {
      const double e = dec.shape == DecayShape::exponential ? std::sqrt(r2) / dec.scale
                                                           : r2 / (dec.scale * dec.scale);
      value += dec.amplitude * std::exp(-e);
    }
  }
  return value;
}

double Profile::sup_bound() const noexcept {
  double b = std::abs(constant_);
  for (const auto& osc : oscillations_) b += std::abs(osc.amplitude);
  for (const auto& dec : decays_) b += std::abs(dec.amplitude);
  return b;
}

double Profile::inf_bound() const noexcept {
  double b = constant_;
  for (const auto& osc : oscillations_) b -= std::abs(osc.amplitude);
  for (const auto& dec : decays_) b += std::min(0.0, dec.amplitude);
  return b;
}

double Profile::max_frequency() const noexcept {
  double m = 0.0;
  for (const auto& osc : oscillations_) {
    double k2 = 0.0;
    for (double k : osc.frequency) k2 += k * k;
    m = std::max(m, std::sqrt(k2));
  }
  return m;
}

Structure Profile::structure() const noexcept {
  if (!decays_.empty()) return Structure::asymptotic;
  Structure s = Structure::constant;
  for (const auto& osc : oscillations_) {
    if (osc.amplitude == 0.0) continue;
    s = combine(s, Structure::periodic);
    for (double k : osc.frequency)
      if (k != std::round(k)) return Structure::quasiperiodic;
  }
  return s;
}

Profile Profile::rescaled(double factor) const {
  Profile p = *this;
  for (auto& osc : p.oscillations_)
    for (double& k : osc.frequency) k *= factor;
  for (auto& dec : p.decays_) dec.scale /= std::abs(factor);
  return p;
}

// ---------------------------------------------------------------------------
// MatrixField

namespace {

std::size_t entry_count(std::size_t dim) { return dim == 1 ? 1 : 3; }

std::size_t upper_index(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i == 0 ? j : 2;  // (0,0)->0, (0,1)->1, (1,1)->2
}

}  // namespace

MatrixField::MatrixField(std::size_t dim, std::vector<Profile> upper_entries, double alpha,
                         std::optional<Profile> macro)
    : dim_(dim),
      entries_(std::move(upper_entries)),
      alpha_(alpha),
      macro_(macro ? *macro : Profile::constant(1.0, dim == 0 ? 1 : dim)),
      structure_(Structure::constant) {
  if (dim < 1 || dim > kMaxDim) throw ArgumentError("matrix field dimension must be 1 or 2");
  if (entries_.size() != entry_count(dim))
    throw ArgumentError("matrix field needs " + std::to_string(entry_count(dim)) +
                        " upper-triangle entries");
  if (!(alpha > 0.0)) throw InputError("ellipticity floor alpha must be positive");
  for (const auto& e : entries_) {
    if (e.dimension() != dim) throw ArgumentError("matrix entry dimension mismatch");
    structure_ = combine(structure_, e.structure());
  }
  if (macro_.dimension() != dim) throw ArgumentError("macroscopic modulation dimension mismatch");
  if (!(macro_.inf_bound() > 0.0) && !macro_.is_constant())
    throw InputError("macroscopic modulation must be bounded away from zero");
  if (macro_.is_constant() && !(macro_.constant_term() > 0.0))
    throw InputError("macroscopic modulation must be positive");
}

MatrixField MatrixField::constant(const Tensor& value, double alpha) {
  std::vector<Profile> e;
  if (value.dim() == 1) {
    e.push_back(Profile::constant(value(0, 0), 1));
  } else {
    if (value(0, 1) != value(1, 0)) throw InputError("constant matrix is not symmetric");
    e = {Profile::constant(value(0, 0), 2), Profile::constant(value(0, 1), 2),
         Profile::constant(value(1, 1), 2)};
  }
  return MatrixField(value.dim(), std::move(e), alpha);
}

MatrixField MatrixField::isotropic(const Profile& a, double alpha) {
  const std::size_t dim = a.dimension();
  if (dim == 1) return MatrixField(1, {a}, alpha);
  return MatrixField(dim, {a, Profile::constant(0.0, dim), a}, alpha);
}

MatrixField MatrixField::diagonal(std::vector<Profile> diag, double alpha) {
  const std::size_t dim = diag.size();
  if (dim == 1) return MatrixField(1, {diag[0]}, alpha);
  if (dim != 2) throw ArgumentError("diagonal matrix field needs 1 or 2 entries");
  return MatrixField(2, {diag[0], Profile::constant(0.0, 2), diag[1]}, alpha);
}

Tensor MatrixField::operator()(std::span<const double> x, std::span<const double> y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw ArgumentError("matrix field evaluated with mismatched point dimension");
  const double m = macro_(x);
  Tensor t(dim_);
  if (dim_ == 1) {
    t(0, 0) = m * entries_[0](y);
  } else {
    t(0, 0) = m * entries_[0](y);
    t(0, 1) = t(1, 0) = entries_[1].is_constant() && entries_[1].constant_term() == 0.0
                            ? 0.0
                            : m * entries_[1](y);
    t(1, 1) = m * entries_[2](y);
  }
  return t;
}

bool MatrixField::is_diagonal() const noexcept {
  return dim_ == 1 || (entries_[1].is_constant() && entries_[1].constant_term() == 0.0);
}

const Profile& MatrixField::entry(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw ArgumentError("matrix entry index out of range");
  return entries_[upper_index(i, j)];
}

double MatrixField::max_frequency() const noexcept {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.max_frequency());
  return m;
}

Tensor MatrixField::mean(std::span<const double> x) const {
  const double m = macro_(x);
  Tensor t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(i, j) = m * entry(i, j).mean();
  return t;
}

double probe_ellipticity(const MatrixField& a, std::span<const double> x, double half_width,
                         std::size_t points_per_axis, std::size_t random_points,
                         std::uint64_t seed) {
  const std::size_t dim = a.dim();
  double worst = HUGE_VAL;
  std::array<double, kMaxDim> y{};
  const std::span<const double> ys(y.data(), dim);
  const auto probe = [&] { worst = std::min(worst, min_rayleigh_quotient(a(x, ys))); };

  const std::size_t p = std::max<std::size_t>(points_per_axis, 2);
  const double step = 2.0 * half_width / static_cast<double>(p - 1);
  if (dim == 1) {
    for (std::size_t i = 0; i < p; ++i) {
      y[0] = -half_width + step * static_cast<double>(i);
      probe();
    }
  } else {
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        y[0] = -half_width + step * static_cast<double>(i);
        y[1] = -half_width + step * static_cast<double>(j);
        probe();
      }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-half_width, half_width);
  for (std::size_t s = 0; s < random_points; ++s) {
    for (std::size_t d = 0; d < dim; ++d) y[d] = u(rng);
    probe();
  }
  return worst;
}

void require_elliptic(const MatrixField& a, std::span<const double> x, double half_width) {
  const double worst = probe_ellipticity(a, x, half_width);
  if (!(worst >= a.alpha() * (1.0 - 1e-12)))
    throw InputError("ellipticity probe failed: min xi.A xi = " + std::to_string(worst) +
                     " < alpha = " + std::to_string(a.alpha()));
}

// ---------------------------------------------------------------------------
// Nonlinearities

std::string_view to_string(Response r) {
  switch (r) {
    case Response::linear: return "linear";
    case Response::sine: return "sine";
    case Response::tanh: return "tanh";
  }
  return "unknown";
}

Response response_from_string(std::string_view name) {
  if (name == "linear") return Response::linear;
  if (name == "sine") return Response::sine;
  if (name == "tanh") return Response::tanh;
  throw ArgumentError("unknown response '" + std::string(name) + "'");
}

double apply_response(Response r, double lambda) {
  switch (r) {
    case Response::linear: return lambda;
    case Response::sine: return std::sin(lambda);
    case Response::tanh: return std::tanh(lambda);
  }
  return lambda;
}

double SeparableTerm::lipschitz_bound() const noexcept {
  return std::abs(scale) * space.sup_bound() * time.sup_bound();
}

DriftField::DriftField(SeparableTerm term, double lipschitz) : term_(std::move(term)) {
  if (term_.time.dimension() != 1) throw ArgumentError("drift time profile must be 1D");
  lipschitz_ = lipschitz > 0.0 ? lipschitz : term_.lipschitz_bound();
}

DriftField DriftField::zero(std::size_t dim) {
  return DriftField(SeparableTerm{Profile::constant(0.0, dim)}, 0.0);
}

DiffusionField::DiffusionField(std::vector<SeparableTerm> shapes, std::vector<double> weights,
                               double lipschitz, double declared_weight_total)
    : shapes_(std::move(shapes)), weights_(std::move(weights)) {
  if (shapes_.size() != weights_.size())
    throw ArgumentError("diffusion field needs one weight per mode");
  for (const auto& s : shapes_) {
    if (s.time.dimension() != 1) throw ArgumentError("diffusion time profile must be 1D");
    if (s.space.dimension() != shapes_.front().space.dimension())
      throw ArgumentError("diffusion modes must share a spatial dimension");
  }
  double hs = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < shapes_.size(); ++k) {
    const double l = weights_[k] * shapes_[k].lipschitz_bound();
    hs += l * l;
    total += weights_[k] * weights_[k];
  }
  lipschitz_ = lipschitz > 0.0 ? lipschitz : std::sqrt(hs);
  weight_total_ = declared_weight_total > 0.0 ? declared_weight_total : total;
}

DiffusionField DiffusionField::inverse_square_weights(const SeparableTerm& shape,
                                                      std::size_t modes) {
  std::vector<SeparableTerm> shapes(modes, shape);
  std::vector<double> w(modes);
  for (std::size_t k = 0; k < modes; ++k) {
    const double kk = static_cast<double>(k + 1);
    w[k] = 1.0 / (kk * kk);
  }
  // sum k^-4 = pi^4 / 90 bounds every truncation
  const double total = std::pow(M_PI, 4) / 90.0;
  return DiffusionField(std::move(shapes), std::move(w), 0.0, total);
}

DiffusionField DiffusionField::zero(std::size_t dim) {
  return DiffusionField({SeparableTerm{Profile::constant(0.0, dim)}}, {0.0}, 0.0, 0.0);
}

std::vector<double> DiffusionField::weight_partial_sums() const {
  std::vector<double> sums(weights_.size());
  double s = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    s += weights_[k] * weights_[k];
    sums[k] = s;
  }
  return sums;
}

std::size_t DiffusionField::dim() const noexcept {
  return shapes_.empty() ? 1 : shapes_.front().space.dimension();
}

Structure DiffusionField::structure() const noexcept {
  Structure s = Structure::constant;
  for (const auto& sh : shapes_) s = combine(s, sh.structure());
  return s;
}

namespace {

template <class Difference>
double lipschitz_probe(std::size_t dim, std::size_t samples, std::uint64_t seed,
                       double half_width, double lambda_range, Difference&& diff) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-half_width, half_width);
  std::uniform_real_distribution<double> lam(-lambda_range, lambda_range);
  std::array<double, kMaxDim + 1> y{};
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t d = 0; d < dim; ++d) y[d] = pos(rng);
    const double tau = pos(rng);
    const double l = lam(rng);
    double m = lam(rng);
    if (l == m) m = l + 1.0;
    const double ratio = diff(std::span<const double>(y.data(), dim), tau, l, m) / std::abs(l - m);
    worst = std::max(worst, ratio);
  }
  return worst;
}

}  // namespace

double probe_lipschitz(const DriftField& f, std::size_t samples, std::uint64_t seed,
                       double half_width, double lambda_range) {
  return lipschitz_probe(f.dim(), samples, seed, half_width, lambda_range,
                         [&](std::span<const double> y, double tau, double l, double m) {
                           return std::abs(f(y, tau, l) - f(y, tau, m));
                         });
}

double probe_lipschitz(const DiffusionField& g, std::size_t samples, std::uint64_t seed,
                       double half_width, double lambda_range) {
  return lipschitz_probe(g.dim(), samples, seed, half_width, lambda_range,
                         [&](std::span<const double> y, double tau, double l, double m) {
                           double s = 0.0;
                           for (std::size_t k = 0; k < g.modes(); ++k) {
                             const double d = g(k, y, tau, l) - g(k, y, tau, m);
                             s += d * d;
                           }
                           return std::sqrt(s);
                         });
}

void validate_nonlinearities(const DriftField& f, const DiffusionField& g, std::size_t samples,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-8.0, 8.0);
  std::array<double, kMaxDim + 1> y{};
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t d = 0; d < f.dim(); ++d) y[d] = pos(rng);
    const double tau = pos(rng);
    if (f(std::span<const double>(y.data(), f.dim()), tau, 0.0) != 0.0)
      throw InputError("drift does not vanish at lambda = 0");
    for (std::size_t k = 0; k < g.modes(); ++k)
      if (g(k, std::span<const double>(y.data(), g.dim()), tau, 0.0) != 0.0)
        throw InputError("diffusion mode " + std::to_string(k + 1) +
                         " does not vanish at lambda = 0");
  }
  const double slack = 1.0 + 1e-12;
  const double lf = probe_lipschitz(f, samples, seed + 1);
  if (lf > f.lipschitz() * slack)
    throw InputError("drift Lipschitz probe " + std::to_string(lf) + " exceeds declared c1 = " +
                     std::to_string(f.lipschitz()));
  const double lg = probe_lipschitz(g, samples, seed + 2);
  if (lg > g.lipschitz() * slack)
    throw InputError("diffusion Lipschitz probe " + std::to_string(lg) +
                     " exceeds declared c3 = " + std::to_string(g.lipschitz()));
  const auto sums = g.weight_partial_sums();
  for (std::size_t k = 0; k < sums.size(); ++k) {
    if (k > 0 && sums[k] < sums[k - 1]) throw InputError("mode weight partial sums not monotone");
    if (sums[k] > g.declared_weight_total() * slack)
      throw InputError("mode weight partial sum exceeds declared total");
  }
}

}  // namespace homog
