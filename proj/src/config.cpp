#include "homog/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "homog/errors.hpp"
#include "homog/presets.hpp"

namespace homog {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? p : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

const std::set<std::string>& known_keys(const std::string& section) {
  static const std::map<std::string, std::set<std::string>> keys{
      {"scenario",
       {"preset", "name", "T", "epsilons", "paths", "deltas", "seed", "cells", "dt", "stride",
        "tolerance", "radii", "points_per_unit", "periodic_cells"}},
      {"coefficient", {"alpha", "dimension"}},
      {"drift", {"response", "scale", "lipschitz"}},
      {"diffusion", {"modes", "weights", "weight_total", "response", "scale", "lipschitz"}},
      {"cell",
       {"x", "direction", "mode", "R", "points_per_unit", "tolerance", "window", "radii",
        "reference", "oracle", "study_window", "periodic_cells"}},
      {"spde", {"form", "epsilon", "path", "snapshots"}},
  };
  static const std::set<std::string> none;
  const auto it = keys.find(section);
  return it == keys.end() ? none : it->second;
}

const std::map<std::string, std::vector<std::string>>& profile_prefixes() {
  static const std::map<std::string, std::vector<std::string>> p{
      {"scenario", {"u0", "u1"}},
      {"coefficient", {"a11", "a12", "a22", "macro"}},
      {"drift", {"space", "time"}},
      {"diffusion", {"space", "time"}},
  };
  return p;
}

bool is_known(const std::string& section, const std::string& key) {
  if (known_keys(section).count(key)) return true;
  const auto dot = key.find('.');
  if (dot == std::string::npos) return false;
  const auto it = profile_prefixes().find(section);
  if (it == profile_prefixes().end()) return false;
  const std::string prefix = key.substr(0, dot);
  const std::string suffix = key.substr(dot + 1);
  if (std::find(it->second.begin(), it->second.end(), prefix) == it->second.end()) return false;
  return suffix == "constant" || suffix == "cos" || suffix == "sin" || suffix == "decay";
}

std::size_t parse_count(std::string_view text) {
  const double v = parse_number(text);
  if (v < 0.0 || v != std::floor(v) || v > 1e15)
    throw ConfigError("expected a non-negative integer, got '" + std::string(text) + "'");
  return static_cast<std::size_t>(v);
}

std::uint64_t parse_u64(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError("expected an unsigned 64-bit integer, got '" + s + "'");
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
  if (errno == ERANGE) throw ConfigError("integer out of range: '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(std::string_view text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("expected a boolean, got '" + s + "'");
}

AveragingWindow parse_window(std::string_view text) {
  const std::string s = trim(text);
  if (s == "full") return AveragingWindow::full();
  if (s == "interior") return AveragingWindow::interior();
  const double f = parse_number(s);
  if (!(f > 0.0) || f > 1.0) throw ConfigError("window fraction must lie in (0, 1]");
  return {f};
}

std::string window_string(AveragingWindow w) {
  if (w.fraction == 1.0) return "full";
  if (w.fraction == 0.5) return "interior";
  return format_number(w.fraction);
}

std::string list_string(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
  return s;
}

// -- profiles ---------------------------------------------------------------

Profile parse_profile(const ConfigDocument& doc, const std::string& section,
                      const std::string& prefix, std::size_t dim) {
  Profile p(dim, 0.0);
  if (auto c = doc.get(section, prefix + ".constant")) p = Profile(dim, parse_number(*c));
  for (const char* wave : {"cos", "sin"}) {
    for (const auto& v : doc.get_all(section, prefix + "." + wave)) {
      const auto parts = split(v, ':');
      if (parts.size() < 2 || parts.size() > 3)
        throw ConfigError(section + "." + prefix + "." + wave +
                          ": expected 'amplitude : frequencies [: phase]'");
      const double amp = parse_number(parts[0]);
      const auto freq = parse_list(parts[1]);
      if (freq.size() != dim)
        throw ConfigError(section + "." + prefix + "." + wave + ": frequency vector needs " +
                          std::to_string(dim) + " entries");
      const double phase = parts.size() == 3 ? parse_number(parts[2]) : 0.0;
      if (std::string(wave) == "cos")
        p.add_cos(amp, freq, phase);
      else
        p.add_sin(amp, freq, phase);
    }
  }
  for (const auto& v : doc.get_all(section, prefix + ".decay")) {
    const auto parts = split(v, ':');
    if (parts.size() != 3)
      throw ConfigError(section + "." + prefix + ".decay: expected 'amplitude : exp|gauss : scale'");
    DecayShape shape;
    if (parts[1] == "exp")
      shape = DecayShape::exponential;
    else if (parts[1] == "gauss")
      shape = DecayShape::gaussian;
    else
      throw ConfigError(section + "." + prefix + ".decay: shape must be exp or gauss");
    const double scale = parse_number(parts[2]);
    if (!(scale > 0.0)) throw ConfigError(section + "." + prefix + ".decay: scale must be positive");
    p.add_decay(parse_number(parts[0]), shape, scale);
  }
  return p;
}

void write_profile(ConfigDocument& doc, const std::string& section, const std::string& prefix,
                   const Profile& p) {
  doc.add(section, prefix + ".constant", format_number(p.constant_term()));
  for (const auto& o : p.oscillations()) {
    std::string v = format_number(o.amplitude) + " : " + list_string(o.frequency);
    if (o.phase != 0.0) v += " : " + format_number(o.phase);
    doc.add(section, prefix + (o.wave == Wave::cosine ? ".cos" : ".sin"), v);
  }
  for (const auto& d : p.decays())
    doc.add(section, prefix + ".decay",
            format_number(d.amplitude) + " : " +
                (d.shape == DecayShape::exponential ? "exp" : "gauss") + " : " +
                format_number(d.scale));
}

Profile sine_bump(std::size_t dim) {
  if (dim == 1) return Profile(1).add_sin(1.0, {0.5});
  // sin(pi x1) sin(pi x2)
  return Profile(2).add_cos(0.5, {0.5, -0.5}).add_cos(-0.5, {0.5, 0.5});
}

template <class F>
auto with_key(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  } catch (const ArgumentError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::string format_number(double v) { return fmt::format("{}", v); }

double parse_number(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("expected a number, got an empty value");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const double num = parse_number(s.substr(0, slash));
    const double den = parse_number(s.substr(slash + 1));
    if (den == 0.0) throw ConfigError("division by zero in '" + s + "'");
    return num / den;
  }
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
    throw ConfigError("expected a number, got '" + s + "'");
  return v;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_number(part));
  return out;
}

ConfigDocument ConfigDocument::parse(std::string_view text, const std::string& source) {
  ConfigDocument doc;
  doc.source_ = source;
  std::string current;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty() || body.front() == ';') continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(where + ": unterminated section header");
      current = trim(body.substr(1, body.size() - 2));
      if (!profile_prefixes().count(current) && known_keys(current).empty())
        throw ConfigError(where + ": unknown section [" + current + "]");
      doc.section(current);
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    if (current.empty()) throw ConfigError(where + ": key outside of a section");
    const std::string key = trim(body.substr(0, eq));
    if (!is_known(current, key))
      throw ConfigError(where + ": unknown key '" + key + "' in [" + current + "]");
    doc.section(current).push_back({key, trim(body.substr(eq + 1)), line_no});
  }
  return doc;
}

ConfigDocument ConfigDocument::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::vector<ConfigEntry>& ConfigDocument::section(const std::string& name) {
  for (auto& [n, entries] : sections_)
    if (n == name) return entries;
  sections_.emplace_back(name, std::vector<ConfigEntry>{});
  return sections_.back().second;
}

void ConfigDocument::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("override '" + std::string(assignment) + "' is not KEY=VALUE");
  const std::string lhs = trim(assignment.substr(0, eq));
  const auto dot = lhs.find('.');
  if (dot == std::string::npos)
    throw ConfigError("override key '" + lhs + "' must be section.key");
  set(lhs.substr(0, dot), lhs.substr(dot + 1), trim(assignment.substr(eq + 1)));
}

void ConfigDocument::set(const std::string& sec, const std::string& key, const std::string& value) {
  if (!is_known(sec, key)) throw ConfigError("unknown key '" + sec + "." + key + "'");
  auto& entries = section(sec);
  entries.erase(std::remove_if(entries.begin(), entries.end(),
                               [&](const ConfigEntry& e) { return e.key == key; }),
                entries.end());
  entries.push_back({key, value, 0});
}

void ConfigDocument::add(const std::string& sec, const std::string& key, const std::string& value) {
  if (!is_known(sec, key)) throw ConfigError("unknown key '" + sec + "." + key + "'");
  section(sec).push_back({key, value, 0});
}

std::optional<std::string> ConfigDocument::get(std::string_view sec, std::string_view key) const {
  std::optional<std::string> out;
  for (const auto& [n, entries] : sections_)
    if (n == sec)
      for (const auto& e : entries)
        if (e.key == key) out = e.value;
  return out;
}

std::vector<std::string> ConfigDocument::get_all(std::string_view sec, std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& [n, entries] : sections_)
    if (n == sec)
      for (const auto& e : entries)
        if (e.key == key) out.push_back(e.value);
  return out;
}

bool ConfigDocument::has_prefix(std::string_view sec, std::string_view prefix) const {
  for (const auto& [n, entries] : sections_)
    if (n == sec)
      for (const auto& e : entries)
        if (e.key.size() > prefix.size() && e.key.compare(0, prefix.size(), prefix) == 0 &&
            e.key[prefix.size()] == '.')
          return true;
  return false;
}

std::string ConfigDocument::to_string() const {
  std::string out;
  for (const auto& [name, entries] : sections_) {
    if (entries.empty()) continue;
    if (!out.empty()) out += "\n";
    out += "[" + name + "]\n";
    for (const auto& e : entries) out += e.key + " = " + e.value + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

ResolvedConfig resolve(const ConfigDocument& doc) {
  ResolvedConfig cfg;
  Scenario& s = cfg.scenario;
  const auto preset = doc.get("scenario", "preset");
  if (preset) s = with_key("scenario.preset", [&] { return preset_scenario(*preset); });
  if (auto v = doc.get("scenario", "name")) s.name = *v;

  // coefficient
  std::size_t dim = preset ? s.dimension() : 1;
  if (auto v = doc.get("coefficient", "dimension")) {
    dim = with_key("coefficient.dimension", [&] { return parse_count(*v); });
    if (dim != 1 && dim != 2) throw ConfigError("coefficient.dimension must be 1 or 2");
  }
  const bool dim_changed = !preset || dim != s.dimension();
  const bool coef_given = doc.has_prefix("coefficient", "a11") ||
                          doc.has_prefix("coefficient", "a12") ||
                          doc.has_prefix("coefficient", "a22") ||
                          doc.has_prefix("coefficient", "macro") ||
                          doc.get("coefficient", "alpha").has_value();
  if (dim_changed && !doc.has_prefix("coefficient", "a11"))
    throw ConfigError("coefficient.a11 is required without a preset of matching dimension");
  if (coef_given || dim_changed) {
    const MatrixField& old = s.coefficient;
    const auto entry = [&](const std::string& name, std::size_t i, std::size_t j, double fallback) {
      if (doc.has_prefix("coefficient", name))
        return with_key("coefficient." + name, [&] { return parse_profile(doc, "coefficient", name, dim); });
      if (!dim_changed) return old.entry(i, j);
      return Profile(dim, fallback);
    };
    std::vector<Profile> upper{entry("a11", 0, 0, 1.0)};
    if (dim == 2) {
      upper.push_back(entry("a12", 0, 1, 0.0));
      if (!doc.has_prefix("coefficient", "a22") && dim_changed) upper.push_back(upper[0]);
      else upper.push_back(entry("a22", 1, 1, 1.0));
    }
    double alpha = dim_changed ? 0.0 : old.alpha();
    if (auto v = doc.get("coefficient", "alpha"))
      alpha = with_key("coefficient.alpha", [&] { return parse_number(*v); });
    if (!(alpha > 0.0)) throw ConfigError("coefficient.alpha must be given and positive");
    Profile macro = dim_changed ? Profile::constant(1.0, dim) : old.macro();
    if (doc.has_prefix("coefficient", "macro"))
      macro = with_key("coefficient.macro", [&] { return parse_profile(doc, "coefficient", "macro", dim); });
    s.coefficient = with_key("coefficient", [&] { return MatrixField(dim, upper, alpha, macro); });
  }
  if (dim_changed) {
    s.drift = DriftField::zero(dim);
    s.diffusion = DiffusionField::zero(dim);
    s.u0 = sine_bump(dim);
    s.u1 = Profile::constant(0.0, dim);
  }

  // drift
  if ((doc.get("drift", "response") || doc.get("drift", "scale") ||
                                  doc.get("drift", "lipschitz") || doc.has_prefix("drift", "space") ||
                                  doc.has_prefix("drift", "time"))) {
    SeparableTerm t = s.drift.term();
    double lip = 0.0;
    if (doc.has_prefix("drift", "space")) t.space = parse_profile(doc, "drift", "space", dim);
    if (doc.has_prefix("drift", "time")) t.time = parse_profile(doc, "drift", "time", 1);
    if (auto v = doc.get("drift", "response"))
      t.response = with_key("drift.response", [&] { return response_from_string(*v); });
    if (auto v = doc.get("drift", "scale")) t.scale = with_key("drift.scale", [&] { return parse_number(*v); });
    if (auto v = doc.get("drift", "lipschitz"))
      lip = with_key("drift.lipschitz", [&] { return parse_number(*v); });
    s.drift = DriftField(t, lip);
  }

  // diffusion
  if (doc.get("diffusion", "modes") || doc.get("diffusion", "weights") ||
      doc.get("diffusion", "weight_total") || doc.get("diffusion", "response") ||
      doc.get("diffusion", "scale") || doc.get("diffusion", "lipschitz") ||
      doc.has_prefix("diffusion", "space") || doc.has_prefix("diffusion", "time")) {
    SeparableTerm t = s.diffusion.shape(0);
    if (doc.has_prefix("diffusion", "space")) t.space = parse_profile(doc, "diffusion", "space", dim);
    if (doc.has_prefix("diffusion", "time")) t.time = parse_profile(doc, "diffusion", "time", 1);
    if (auto v = doc.get("diffusion", "response"))
      t.response = with_key("diffusion.response", [&] { return response_from_string(*v); });
    if (auto v = doc.get("diffusion", "scale"))
      t.scale = with_key("diffusion.scale", [&] { return parse_number(*v); });
    double lip = 0.0, total = 0.0;
    if (auto v = doc.get("diffusion", "lipschitz"))
      lip = with_key("diffusion.lipschitz", [&] { return parse_number(*v); });
    if (auto v = doc.get("diffusion", "weight_total"))
      total = with_key("diffusion.weight_total", [&] { return parse_number(*v); });
    std::optional<std::size_t> modes;
    if (auto v = doc.get("diffusion", "modes"))
      modes = with_key("diffusion.modes", [&] { return parse_count(*v); });
    const auto weights = doc.get("diffusion", "weights");
    if (weights && trim(*weights) != "inverse_square") {
      const auto w = with_key("diffusion.weights", [&] { return parse_list(*weights); });
      if (modes && *modes != w.size())
        throw ConfigError("diffusion.modes disagrees with the length of diffusion.weights");
      s.diffusion = with_key("diffusion", [&] {
        return DiffusionField(std::vector<SeparableTerm>(w.size(), t), w, lip, total);
      });
    } else {
      const std::size_t m = modes.value_or(s.diffusion.modes());
      if (m == 0) throw ConfigError("diffusion.modes must be at least 1");
      const auto base = DiffusionField::inverse_square_weights(t, m);
      s.diffusion = with_key("diffusion", [&] {
        return DiffusionField(std::vector<SeparableTerm>(m, t), base.weights(), lip,
                              total > 0.0 ? total : base.declared_weight_total());
      });
    }
  }

  // scenario scalars
  const auto num = [&](const char* key, auto& target) {
    if (auto v = doc.get("scenario", key))
      target = with_key(std::string("scenario.") + key, [&] { return parse_number(*v); });
  };
  const auto count = [&](const char* key, std::size_t& target) {
    if (auto v = doc.get("scenario", key))
      target = with_key(std::string("scenario.") + key, [&] { return parse_count(*v); });
  };
  const auto list = [&](const char* sec, const char* key, std::vector<double>& target) {
    if (auto v = doc.get(sec, key))
      target = with_key(std::string(sec) + "." + key, [&] { return parse_list(*v); });
  };
  num("T", s.T);
  num("dt", s.dt);
  num("tolerance", s.tolerance);
  num("points_per_unit", s.points_per_unit);
  count("paths", s.paths);
  count("cells", s.cells);
  count("stride", s.stride);
  count("periodic_cells", s.periodic_cells);
  list("scenario", "epsilons", s.epsilons);
  list("scenario", "deltas", s.deltas);
  list("scenario", "radii", s.radii);
  if (auto v = doc.get("scenario", "seed")) s.seed = with_key("scenario.seed", [&] { return parse_u64(*v); });
  if (doc.has_prefix("scenario", "u0")) s.u0 = parse_profile(doc, "scenario", "u0", dim);
  if (doc.has_prefix("scenario", "u1")) s.u1 = parse_profile(doc, "scenario", "u1", dim);

  // cell
  CellSettings& c = cfg.cell;
  c.x.assign(dim, 0.5);
  list("cell", "x", c.x);
  if (c.x.size() != dim) throw ConfigError("cell.x needs " + std::to_string(dim) + " entries");
  if (auto v = doc.get("cell", "direction")) {
    c.direction = with_key("cell.direction", [&] { return parse_count(*v); });
    if (c.direction < 1 || c.direction > dim) throw ConfigError("cell.direction must be 1.." + std::to_string(dim));
  }
  if (auto v = doc.get("cell", "mode")) {
    c.mode = trim(*v);
    if (c.mode != "auto" && c.mode != "periodic" && c.mode != "truncated")
      throw ConfigError("cell.mode must be auto, periodic or truncated");
  }
  const auto cnum = [&](const char* key, double& target) {
    if (auto v = doc.get("cell", key))
      target = with_key(std::string("cell.") + key, [&] { return parse_number(*v); });
  };
  cnum("R", c.R);
  cnum("points_per_unit", c.points_per_unit);
  cnum("tolerance", c.tolerance);
  if (!(c.R > 0.0)) throw ConfigError("cell.R must be positive");
  if (!(c.points_per_unit > 0.0)) throw ConfigError("cell.points_per_unit must be positive");
  if (!(c.tolerance > 0.0)) throw ConfigError("cell.tolerance must be positive");
  if (auto v = doc.get("cell", "window")) c.window = with_key("cell.window", [&] { return parse_window(*v); });
  if (auto v = doc.get("cell", "study_window"))
    c.study_window = with_key("cell.study_window", [&] { return parse_window(*v); });
  list("cell", "radii", c.radii);
  list("cell", "oracle", c.oracle);
  if (!c.oracle.empty() && c.oracle.size() != dim * dim)
    throw ConfigError("cell.oracle needs " + std::to_string(dim * dim) + " entries");
  if (auto v = doc.get("cell", "reference")) {
    c.reference = trim(*v);
    if (c.reference != "auto")
      with_key("cell.reference", [&] { return reference_from_string(c.reference); });
    if (c.reference == "oracle" && c.oracle.empty())
      throw ConfigError("cell.reference = oracle needs cell.oracle");
  }
  if (auto v = doc.get("cell", "periodic_cells"))
    c.periodic_cells = with_key("cell.periodic_cells", [&] { return parse_count(*v); });

  // spde
  SpdeSettings& p = cfg.spde;
  if (auto v = doc.get("spde", "form")) {
    p.form = trim(*v);
    if (p.form != "oscillatory" && p.form != "homogenized")
      throw ConfigError("spde.form must be oscillatory or homogenized");
  }
  if (auto v = doc.get("spde", "epsilon")) {
    p.epsilon = with_key("spde.epsilon", [&] { return parse_number(*v); });
    if (p.epsilon < 0.0) throw ConfigError("spde.epsilon must be positive (0 selects the schedule)");
  }
  if (auto v = doc.get("spde", "path")) p.path = with_key("spde.path", [&] { return parse_count(*v); });
  if (auto v = doc.get("spde", "snapshots")) p.snapshots = with_key("spde.snapshots", [&] { return parse_bool(*v); });

  s.validate();
  return cfg;
}

ConfigDocument to_document(const ResolvedConfig& cfg) {
  const Scenario& s = cfg.scenario;
  const std::size_t dim = s.dimension();
  ConfigDocument doc;
  doc.add("scenario", "name", s.name);
  doc.add("scenario", "T", format_number(s.T));
  doc.add("scenario", "epsilons", list_string(s.epsilons));
  doc.add("scenario", "paths", std::to_string(s.paths));
  if (!s.deltas.empty()) doc.add("scenario", "deltas", list_string(s.deltas));
  doc.add("scenario", "seed", std::to_string(s.seed));
  doc.add("scenario", "cells", std::to_string(s.cells));
  doc.add("scenario", "dt", format_number(s.dt));
  doc.add("scenario", "stride", std::to_string(s.stride));
  doc.add("scenario", "tolerance", format_number(s.tolerance));
  doc.add("scenario", "radii", list_string(s.radii));
  doc.add("scenario", "points_per_unit", format_number(s.points_per_unit));
  doc.add("scenario", "periodic_cells", std::to_string(s.periodic_cells));
  write_profile(doc, "scenario", "u0", s.u0);
  write_profile(doc, "scenario", "u1", s.u1);

  doc.add("coefficient", "dimension", std::to_string(dim));
  doc.add("coefficient", "alpha", format_number(s.coefficient.alpha()));
  write_profile(doc, "coefficient", "a11", s.coefficient.entry(0, 0));
  if (dim == 2) {
    write_profile(doc, "coefficient", "a12", s.coefficient.entry(0, 1));
    write_profile(doc, "coefficient", "a22", s.coefficient.entry(1, 1));
  }
  write_profile(doc, "coefficient", "macro", s.coefficient.macro());

  const SeparableTerm& f = s.drift.term();
  doc.add("drift", "response", std::string(to_string(f.response)));
  doc.add("drift", "scale", format_number(f.scale));
  doc.add("drift", "lipschitz", format_number(s.drift.lipschitz()));
  write_profile(doc, "drift", "space", f.space);
  write_profile(doc, "drift", "time", f.time);

  const SeparableTerm& g = s.diffusion.shape(0);
  doc.add("diffusion", "modes", std::to_string(s.diffusion.modes()));
  doc.add("diffusion", "weights", list_string(s.diffusion.weights()));
  doc.add("diffusion", "weight_total", format_number(s.diffusion.declared_weight_total()));
  doc.add("diffusion", "response", std::string(to_string(g.response)));
  doc.add("diffusion", "scale", format_number(g.scale));
  doc.add("diffusion", "lipschitz", format_number(s.diffusion.lipschitz()));
  write_profile(doc, "diffusion", "space", g.space);
  write_profile(doc, "diffusion", "time", g.time);

  const CellSettings& c = cfg.cell;
  doc.add("cell", "x", list_string(c.x));
  doc.add("cell", "direction", std::to_string(c.direction));
  doc.add("cell", "mode", c.mode);
  doc.add("cell", "R", format_number(c.R));
  doc.add("cell", "points_per_unit", format_number(c.points_per_unit));
  doc.add("cell", "tolerance", format_number(c.tolerance));
  doc.add("cell", "window", window_string(c.window));
  doc.add("cell", "radii", list_string(c.radii));
  doc.add("cell", "reference", c.reference);
  if (!c.oracle.empty()) doc.add("cell", "oracle", list_string(c.oracle));
  doc.add("cell", "study_window", window_string(c.study_window));
  doc.add("cell", "periodic_cells", std::to_string(c.periodic_cells));

  doc.add("spde", "form", cfg.spde.form);
  doc.add("spde", "epsilon", format_number(cfg.spde.epsilon));
  doc.add("spde", "path", std::to_string(cfg.spde.path));
  doc.add("spde", "snapshots", cfg.spde.snapshots ? "true" : "false");
  return doc;
}

}  // namespace homog
