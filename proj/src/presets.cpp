#include "homog/presets.hpp"

#include <cmath>
#include <string>

#include "homog/errors.hpp"

namespace homog {

namespace {

const double kRoot2 = std::sqrt(2.0);

Profile periodic_a() { return Profile(1, 2.0).add_cos(1.0, {1.0}); }
Profile quasi_a() { return Profile(1, 2.5).add_cos(1.0, {1.0}).add_cos(1.0, {kRoot2}); }
// 1.5 + exp(-tau^2): converges to 1.5 at infinity
Profile relaxing_time() { return Profile(1, 1.5).add_decay(1.0, DecayShape::gaussian, 1.0); }

Scenario base(std::string name, std::string description, Profile a, double alpha,
              SeparableTerm f, SeparableTerm g_shape) {
  Scenario s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.coefficient = MatrixField::isotropic(a, alpha);
  s.drift = DriftField(std::move(f));
  s.diffusion = DiffusionField::inverse_square_weights(g_shape, 1);
  return s;
}

}  // namespace

std::vector<PresetInfo> preset_list() {
  return {
      {"constant", "a = 2, f = lambda, g_1 = 0.5 lambda (no oscillation)"},
      {"Problem1", "periodic: a = 2 + cos(2 pi y), f = (2 + cos 2 pi y)(1 + cos 2 pi tau) lambda, "
                   "g_1 = (2 + sin 2 pi tau) lambda"},
      {"Problem2", "almost periodic: a = 2.5 + cos(2 pi y) + cos(2 sqrt2 pi y), "
                   "AP drift and noise in (y, tau)"},
      {"Problem3", "periodic space, time factor 1.5 + exp(-tau^2) with a limit at infinity"},
      {"Problem4", "almost periodic space, time factor 1.5 + exp(-tau^2)"},
      {"Problem5", "asymptotic: a = 2 + cos(2 pi y) + exp(-|y|), AP time"},
  };
}

Scenario preset_scenario(std::string_view name) {
  Scenario s;
  if (name == "constant") {
    s = base("constant", "", Profile::constant(2.0), 1.0, SeparableTerm{Profile::constant(1.0)},
             SeparableTerm{Profile::constant(1.0)});
    s.diffusion = DiffusionField({SeparableTerm{Profile::constant(1.0)}}, {0.5});
  } else if (name == "Problem1") {
    s = base("Problem1", "", periodic_a(), 1.0,
             SeparableTerm{Profile(1, 2.0).add_cos(1.0, {1.0}), Profile(1, 1.0).add_cos(1.0, {1.0})},
             SeparableTerm{Profile::constant(1.0), Profile(1, 2.0).add_sin(1.0, {1.0})});
  } else if (name == "Problem2") {
    s = base("Problem2", "", quasi_a(), 0.5,
             SeparableTerm{Profile(1, 2.0).add_cos(1.0, {kRoot2}),
                           Profile(1, 1.0).add_cos(1.0, {std::sqrt(3.0)})},
             SeparableTerm{Profile::constant(1.0), Profile(1, 2.0).add_sin(1.0, {kRoot2})});
    s.cells = 768;
  } else if (name == "Problem3") {
    s = base("Problem3", "", periodic_a(), 1.0,
             SeparableTerm{Profile(1, 2.0).add_cos(1.0, {1.0}), relaxing_time()},
             SeparableTerm{Profile::constant(1.0), relaxing_time()});
  } else if (name == "Problem4") {
    s = base("Problem4", "", quasi_a(), 0.5,
             SeparableTerm{Profile(1, 2.0).add_cos(1.0, {kRoot2}), relaxing_time()},
             SeparableTerm{Profile::constant(1.0), relaxing_time()});
    s.cells = 768;
  } else if (name == "Problem5") {
    s = base("Problem5", "",
             Profile(1, 2.0).add_cos(1.0, {1.0}).add_decay(1.0, DecayShape::exponential, 1.0), 1.0,
             SeparableTerm{Profile(1, 2.0).add_cos(1.0, {1.0}), Profile(1, 1.0).add_cos(1.0, {kRoot2})},
             SeparableTerm{Profile::constant(1.0), Profile(1, 2.0).add_sin(1.0, {kRoot2})});
  } else {
    throw ArgumentError("unknown preset '" + std::string(name) +
                        "' (known: constant, Problem1 .. Problem5)");
  }
  for (const auto& p : preset_list())
    if (p.name == s.name) s.description = p.description;
  s.validate();
  return s;
}

}  // namespace homog
