#include "homog/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "homog/cell_problem.hpp"
#include "homog/config.hpp"
#include "homog/effective.hpp"
#include "homog/errors.hpp"
#include "homog/experiments.hpp"
#include "homog/presets.hpp"
#include "homog/wave.hpp"

namespace homog {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  std::vector<std::string> overrides;
};

std::string f(double v) { return format_number(v); }

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size()) throw Error("internal: csv row width mismatch");
    rows_.push_back(cells);
  }
  std::string text() const {
    std::string s;
    const auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
      s += "\n";
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return s;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

class Output {
 public:
  explicit Output(const std::string& dir) : dir_(dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_))
      throw ConfigError("cannot create output directory '" + dir + "'");
  }
  void write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream o(p, std::ios::binary | std::ios::trunc);
    if (!o) throw ConfigError("cannot write '" + p.string() + "'");
    o << text;
    if (!o) throw ConfigError("write failed for '" + p.string() + "'");
    files_.push_back(name);
  }
  void manifest(const std::string& subcommand, const ResolvedConfig& cfg,
                const std::vector<std::string>& notes = {}) {
    std::string s = "# homog run manifest\n# subcommand: " + subcommand + "\n";
    s += "# reproduce: homog " + subcommand + " --config manifest.txt\n";
    s += "# outputs:";
    for (const auto& n : files_) s += " " + n;
    s += "\n";
    for (const auto& n : notes) s += "# " + n + "\n";
    s += "\n" + to_document(cfg).to_string();
    write("manifest.txt", s);
  }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

ResolvedConfig load(const Options& o) {
  ConfigDocument doc = o.config.empty() ? ConfigDocument{} : ConfigDocument::load(o.config);
  for (const auto& ov : o.overrides) doc.apply_override(ov);
  if (o.seed) doc.set("scenario", "seed", std::to_string(*o.seed));
  return resolve(doc);
}

std::span<const double> xs(const ResolvedConfig& c) { return c.cell.x; }

bool periodic_mode(const ResolvedConfig& c) {
  const Structure st = c.scenario.coefficient.structure();
  const bool periodic = st == Structure::constant || st == Structure::periodic;
  if (c.cell.mode == "periodic") {
    if (!periodic)
      throw InputError("cell.mode = periodic needs a periodic coefficient (structure " +
                       std::string(to_string(st)) + ")");
    return true;
  }
  if (c.cell.mode == "truncated") return false;
  return periodic;
}

std::size_t truncated_cells(const ResolvedConfig& c, double R) {
  return static_cast<std::size_t>(std::llround(2.0 * R * c.cell.points_per_unit));
}

std::vector<std::string> tensor_cells(const Tensor& t) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      v.push_back(i < t.dim() && j < t.dim() ? f(t(i, j)) : "");
  return v;
}

std::string tensor_text(const Tensor& t) {
  if (t.dim() == 1) return "[" + f(t(0, 0)) + "]";
  return "[" + f(t(0, 0)) + " " + f(t(0, 1)) + "; " + f(t(1, 0)) + " " + f(t(1, 1)) + "]";
}

// -- subcommands ------------------------------------------------------------

int cmd_cell_solve(const Options& o, std::ostream& out) {
  const ResolvedConfig cfg = load(o);
  const MatrixField& a = cfg.scenario.coefficient;
  const std::size_t j = cfg.cell.direction - 1;
  const bool periodic = periodic_mode(cfg);
  const CellSolution sol =
      periodic ? solve_periodic_cell(a, xs(cfg), j, cfg.cell.periodic_cells, cfg.cell.tolerance)
               : solve_truncated_cell(a, xs(cfg), j, cfg.cell.R, truncated_cells(cfg, cfg.cell.R),
                                      cfg.cell.tolerance);
  const FluxField fx = flux(sol, a);
  const Grid& g = sol.grid;
  const std::size_t dim = g.dim();

  Csv nodes({"node", "y1", "y2", "chi"});
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto p = g.node_point(n);
    nodes.row({std::to_string(n), f(p[0]), dim == 2 ? f(p[1]) : "", f(sol.chi[n])});
  }
  Csv cells({"cell", "y1", "y2", "flux1", "flux2"});
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto p = g.cell_point(c);
    cells.row({std::to_string(c), f(p[0]), dim == 2 ? f(p[1]) : "", f(fx.cell_mean[c][0]),
               dim == 2 ? f(fx.cell_mean[c][1]) : ""});
  }
  Output dir(o.out);
  dir.write("cell_solution.csv", nodes.text());
  dir.write("cell_flux.csv", cells.text());
  dir.manifest("cell-solve", cfg);
  out << "cell-solve: " << (periodic ? "periodic" : "truncated") << " j=" << cfg.cell.direction
      << " cells=" << g.cells() << " residual=" << f(sol.residual)
      << " iterations=" << sol.iterations << " gradient_energy=" << f(sol.gradient_energy) << "\n";
  return kExitOk;
}

ConvergenceRecord study(const ResolvedConfig& cfg, std::size_t threads) {
  ConvergenceOptions opt;
  opt.points_per_unit = cfg.cell.points_per_unit;
  opt.tolerance = cfg.cell.tolerance;
  opt.primary = cfg.cell.study_window;
  opt.periodic_cells = cfg.cell.periodic_cells;
  opt.threads = threads;
  const std::size_t dim = cfg.scenario.dimension();
  if (!cfg.cell.oracle.empty()) {
    Tensor t(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) t(i, k) = cfg.cell.oracle[i * dim + k];
    opt.oracle = t;
  }
  if (cfg.cell.reference == "auto") {
    const Structure st = cfg.scenario.coefficient.structure();
    if (opt.oracle)
      opt.reference = ReferenceKind::oracle;
    else if (st == Structure::constant || st == Structure::periodic)
      opt.reference = ReferenceKind::periodic;
    else
      opt.reference = ReferenceKind::largest_r;
  } else {
    opt.reference = reference_from_string(cfg.cell.reference);
  }
  return convergence_study(cfg.scenario.coefficient, xs(cfg), cfg.cell.radii, opt);
}

Csv convergence_csv(const ConvergenceRecord& rec) {
  Csv csv({"R", "cells", "window", "a11", "a12", "a21", "a22", "error", "error_full",
           "error_interior", "cauchy", "residual", "gradient_energy"});
  for (const auto& e : rec.entries) {
    const EffectiveTensor& t = rec.primary.fraction < 1.0 ? e.interior : e.full;
    std::vector<std::string> r{f(e.radius), std::to_string(e.cells), f(t.window)};
    for (auto& c : tensor_cells(t.value)) r.push_back(c);
    for (double v : {e.error, e.error_full, e.error_interior, e.cauchy,
                     std::max(e.full.residual, e.interior.residual), e.full.gradient_energy})
      r.push_back(f(v));
    csv.row(r);
  }
  return csv;
}

std::string study_note(const ConvergenceRecord& rec) {
  return "reference=" + std::string(to_string(rec.reference_kind)) + " " +
         tensor_text(rec.reference) +
         " errors_decreasing=" + (rec.errors_decreasing ? "true" : "false") +
         " cauchy_decreasing=" + (rec.cauchy_decreasing ? "true" : "false");
}

int cmd_effective(const Options& o, std::ostream& out) {
  const ResolvedConfig cfg = load(o);
  const MatrixField& a = cfg.scenario.coefficient;
  const bool periodic = periodic_mode(cfg);
  const EffectiveTensor t =
      periodic ? assemble_effective_periodic(a, xs(cfg), cfg.cell.periodic_cells, cfg.cell.tolerance)
               : assemble_effective_truncated(a, xs(cfg), cfg.cell.R, truncated_cells(cfg, cfg.cell.R),
                                              cfg.cell.tolerance, cfg.cell.window);
  const ConvergenceRecord rec = study(cfg, o.threads);

  Csv eff({"provenance", "R", "cells", "window", "a11", "a12", "a21", "a22", "residual",
           "symmetry_defect", "min_rayleigh", "symmetric", "elliptic"});
  std::vector<std::string> r{std::string(to_string(t.provenance)), f(t.half_width),
                             std::to_string(t.cells), f(t.window)};
  for (auto& c : tensor_cells(t.value)) r.push_back(c);
  r.insert(r.end(), {f(t.residual), f(t.symmetry_defect), f(t.min_rayleigh),
                     t.symmetric ? "true" : "false", t.elliptic ? "true" : "false"});
  eff.row(r);

  Output dir(o.out);
  dir.write("effective.csv", eff.text());
  dir.write("convergence.csv", convergence_csv(rec).text());
  dir.manifest("effective", cfg, {study_note(rec)});
  out << "effective: A = " << tensor_text(t.value) << " (" << to_string(t.provenance) << ")"
      << " final error = " << f(rec.entries.back().error) << " vs "
      << to_string(rec.reference_kind) << "\n";
  return kExitOk;
}

int cmd_converge(const Options& o, std::ostream& out) {
  const ResolvedConfig cfg = load(o);
  const ConvergenceRecord rec = study(cfg, o.threads);
  Output dir(o.out);
  dir.write("convergence.csv", convergence_csv(rec).text());
  dir.manifest("converge-R", cfg, {study_note(rec)});
  for (const auto& e : rec.entries)
    out << "R=" << f(e.radius) << " error=" << f(e.error) << " cauchy=" << f(e.cauchy) << "\n";
  out << "converge-R: " << study_note(rec) << "\n";
  return kExitOk;
}

int cmd_spde_run(const Options& o, std::ostream& out) {
  const ResolvedConfig cfg = load(o);
  const Scenario& s = cfg.scenario;
  const double eps = cfg.spde.epsilon > 0.0 ? cfg.spde.epsilon : s.epsilons.front();
  const bool osc = cfg.spde.form == "oscillatory";
  std::optional<WaveProblem> problem;
  std::string note;
  if (osc) {
    const std::size_t need = required_cells(s, eps);
    if (s.cells < need)
      throw PreconditionError("grid of " + std::to_string(s.cells) +
                              " cells per axis does not resolve eps = " + f(eps) + ": at least " +
                              std::to_string(need) + " cells are required");
    problem = oscillatory_problem(s.coefficient, s.drift, s.diffusion, eps, s.cells);
    note = "form=oscillatory epsilon=" + f(eps);
  } else {
    const HomogenizedTensor ht = homogenized_tensor(s, o.threads);
    problem = homogenized_problem(ht.tensor.value, s.coefficient.macro(), s.drift, s.diffusion,
                                  s.cells);
    note = "form=homogenized effective=" + tensor_text(ht.tensor.value);
  }
  const WaveSolver solver(*problem, s.dt);
  const std::size_t steps = step_count(s.T, s.dt);
  const auto inc = BrownianIncrements::generate(s.seed, cfg.spde.path, s.diffusion.modes(), steps, s.dt);
  const TrajectoryRecord rec =
      solver.run(initial_state(*problem, s.u0, s.u1), s.T, s.stride, &inc, cfg.spde.snapshots);

  Csv traj({"t", "h1", "l2v", "energy", "sup4_h1", "sup4_l2v"});
  for (const auto& m : rec.samples)
    traj.row({f(m.t), f(m.h1), f(m.l2v), f(m.energy), f(m.sup4_h1), f(m.sup4_l2v)});
  Output dir(o.out);
  dir.write("trajectory.csv", traj.text());
  if (cfg.spde.snapshots) {
    Csv snap({"t", "node", "x1", "x2", "u"});
    const Grid& g = problem->grid;
    for (std::size_t k = 0; k < rec.snapshots.size(); ++k) {
      const auto w = to_nodal(*problem, rec.snapshots[k]);
      for (std::size_t n = 0; n < w.size(); ++n) {
        const auto p = g.node_point(n);
        snap.row({f(rec.snapshot_times[k]), std::to_string(n), f(p[0]),
                  g.dim() == 2 ? f(p[1]) : "", f(w[n])});
      }
    }
    dir.write("snapshots.csv", snap.text());
  }
  dir.manifest("spde-run", cfg, {note});
  const auto& last = rec.samples.back();
  out << "spde-run: " << note << " steps=" << rec.steps << " t=" << f(last.t)
      << " h1=" << f(last.h1) << " l2v=" << f(last.l2v) << " energy=" << f(last.energy) << "\n";
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const ResolvedConfig cfg = load(o);
  const ComparisonResult r = compare_epsilon_sweep(cfg.scenario, o.threads);
  Csv errors({"scenario", "epsilon", "path", "e", "e2"});
  for (const auto& e : r.errors)
    errors.row({r.scenario, f(e.epsilon), std::to_string(e.path), f(e.e), f(e.e * e.e)});
  Csv summary({"epsilon", "mean_e2", "median_e", "delta", "p_exceed"});
  for (const auto& s : r.summary)
    for (std::size_t d = 0; d < r.deltas.size(); ++d)
      summary.row({f(s.epsilon), f(s.mean_e2), f(s.median_e), f(r.deltas[d]), f(s.exceed[d])});
  Output dir(o.out);
  dir.write("errors.csv", errors.text());
  dir.write("summary.csv", summary.text());
  std::string tails;
  for (bool b : r.exceed_nonincreasing) tails += b ? "1" : "0";
  dir.manifest("homog-compare", cfg,
               {"effective=" + tensor_text(r.effective) + " (" +
                    std::string(to_string(r.provenance)) + ")",
                std::string("mean_e2_decreasing=") + (r.mean_e2_decreasing ? "true" : "false") +
                    " tails_nonincreasing=" + tails + " verdict=" + (r.pass ? "PASS" : "FAIL")});
  for (const auto& s : r.summary) {
    out << "eps=" << f(s.epsilon) << " mean_e2=" << f(s.mean_e2);
    for (std::size_t d = 0; d < r.deltas.size(); ++d)
      out << " P(e>" << f(r.deltas[d]) << ")=" << f(s.exceed[d]);
    out << "\n";
  }
  out << "verdict: " << (r.pass ? "PASS" : "FAIL") << "\n";
  return kExitOk;
}

int cmd_presets(std::ostream& out) {
  for (const auto& p : preset_list()) out << p.name << "  " << p.description << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical homogenization of oscillating media and stochastic wave equations",
               "homog"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "scenario config file");
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--seed", o.seed, "master seed (overrides scenario.seed)");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--override", o.overrides, "section.key=value (repeatable)");
  };
  const std::map<std::string, std::pair<std::string, std::function<int()>>> commands{
      {"cell-solve", {"solve one corrector problem", [&] { return cmd_cell_solve(o, out); }}},
      {"effective", {"effective tensor plus its R study", [&] { return cmd_effective(o, out); }}},
      {"converge-R", {"R -> infinity convergence study", [&] { return cmd_converge(o, out); }}},
      {"spde-run", {"one stochastic wave trajectory", [&] { return cmd_spde_run(o, out); }}},
      {"homog-compare", {"coupled epsilon sweep", [&] { return cmd_compare(o, out); }}},
      {"preset-list", {"list preset scenarios", [&] { return cmd_presets(out); }}},
  };
  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name, cmd.first);
    if (name != "preset-list") common(sub);
    sub->callback([&action, fn = cmd.second] { action = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    return action();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ArgumentError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& e) {
    err << "refused: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << " (residual " << f(e.residual()) << " after "
        << e.iterations() << " iterations)\n";
    return kExitSolver;
  } catch (const BlowUpError& e) {
    err << "blow-up: " << e.what() << "\n";
    return kExitSolver;
  } catch (const EvaluationError& e) {
    err << "evaluation error: " << e.what() << "\n";
    return kExitSolver;
  }
}

}  // namespace homog
