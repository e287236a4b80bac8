#include "cavityed/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "cavityed/error.hpp"

namespace cavityed {

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Spectrum: return "spectrum";
    case ExperimentKind::BoxSweep: return "box_sweep";
    case ExperimentKind::GaugeCompare: return "gauge_compare";
    case ExperimentKind::TranslationTest: return "translation_test";
    case ExperimentKind::FindResonance: return "find_resonance";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (auto k : {ExperimentKind::Spectrum, ExperimentKind::BoxSweep, ExperimentKind::GaugeCompare,
                 ExperimentKind::TranslationTest, ExperimentKind::FindResonance})
    if (text == to_string(k)) return k;
  throw ParameterError("unknown experiment kind '" + std::string(text) + "'");
}

namespace {

// section -> keys, in the order serialize_config writes them
const std::vector<std::pair<std::string, std::vector<std::string>>> kSchema = {
    {"experiment", {"kind", "name", "boxes", "toggle", "toggle_values", "shifts"}},
    {"model", {"kind", "Z", "Z_plus", "Z_minus", "nuclear_mass", "electron_mass", "L", "R_c", "R_f", "dipole",
               "harmonic_omega", "center"}},
    {"grid", {"electron_box", "electron_spacing", "nuclear_box", "nuclear_spacing"}},
    {"cavity", {"omega", "n_fock", "lambda", "g_over_omega", "gauge", "self_polarization", "diamagnetic",
                "subtract_vacuum"}},
    {"solver", {"k", "tol", "max_iter", "seed", "krylov_dim"}},
    {"output", {"csv", "manifest"}},
};

bool known_key(const std::string& section, const std::string& key) {
  for (const auto& [s, keys] : kSchema)
    if (s == section) return std::find(keys.begin(), keys.end(), key) != keys.end();
  return false;
}

bool known_section(std::string_view section) {
  return std::any_of(kSchema.begin(), kSchema.end(), [&](const auto& s) { return s.first == section; });
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct Raw {
  std::string value;
  int line = 0;
};

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::string section;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      const std::string t = trim(line);
      if (t.empty()) continue;
      if (t.front() == '[') {
        if (t.back() != ']') throw ConfigParseError(line_no, "malformed section header '" + t + "'");
        section = trim(std::string_view(t).substr(1, t.size() - 2));
        if (!known_section(section)) throw ConfigParseError(line_no, "unknown section [" + section + "]");
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw ConfigParseError(line_no, "expected 'key = value', got '" + t + "'");
      const std::string key = trim(std::string_view(t).substr(0, eq));
      const std::string value = trim(std::string_view(t).substr(eq + 1));
      if (section.empty()) throw ConfigParseError(line_no, "key '" + key + "' appears before any [section]");
      if (key.empty()) throw ConfigParseError(line_no, "missing key before '='");
      if (!known_key(section, key)) throw ConfigParseError(line_no, "unknown key '" + key + "' in [" + section + "]");
      if (value.empty()) throw ConfigParseError(line_no, "key '" + key + "' has no value");
      if (!entries_.emplace(std::make_pair(section, key), Raw{value, line_no}).second)
        throw ConfigParseError(line_no, "duplicate key '" + key + "' in [" + section + "]");
    }
  }

  std::optional<Raw> take(const std::string& section, const std::string& key) {
    auto it = entries_.find({section, key});
    if (it == entries_.end()) return std::nullopt;
    used_.insert(it->first);
    return it->second;
  }

  Raw require(const std::string& section, const std::string& key) {
    auto r = take(section, key);
    if (!r) throw ConfigParseError(0, "missing required key '" + key + "' in [" + section + "]");
    return *r;
  }

  // Known keys that were never consumed do not apply to this configuration.
  void reject_unused(std::string_view context) const {
    for (const auto& [k, raw] : entries_)
      if (!used_.count(k))
        throw ConfigParseError(raw.line, "key '" + k.second + "' in [" + k.first + "] does not apply to " +
                                             std::string(context));
  }

 private:
  std::map<std::pair<std::string, std::string>, Raw> entries_;
  std::set<std::pair<std::string, std::string>> used_;
};

double to_double(const std::string& text, int line, const std::string& key) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) {
    if (text.find(' ') != std::string::npos)
      throw ConfigParseError(line, "key '" + key + "' takes a plain number without units, got '" + text + "'");
    throw ConfigParseError(line, "key '" + key + "': '" + text + "' is not a finite number");
  }
  return v;
}

template <class U>
U to_unsigned(const std::string& text, int line, const std::string& key) {
  U v = 0;
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end)
    throw ConfigParseError(line, "key '" + key + "': '" + text + "' is not a non-negative integer");
  return v;
}

bool to_bool(const std::string& text, int line, const std::string& key) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigParseError(line, "key '" + key + "': expected true or false, got '" + text + "'");
}

Length to_length(const std::string& text, int line, const std::string& key, std::optional<LengthUnit> fallback = {}) {
  const auto sp = text.find_first_of(" \t");
  std::string number = text, unit;
  if (sp != std::string::npos) {
    number = text.substr(0, sp);
    unit = trim(std::string_view(text).substr(sp));
  }
  const double v = to_double(number, line, key);
  if (unit.empty()) {
    if (!fallback) throw ConfigParseError(line, "key '" + key + "': length '" + text + "' needs a unit (bohr or angstrom)");
    return {v, *fallback};
  }
  try {
    return {v, parse_length_unit(unit)};
  } catch (const std::exception&) {
    throw ConfigParseError(line, "key '" + key + "': unknown length unit '" + unit + "'");
  }
}

// "1, 2, 3 angstrom": a trailing unit applies to every item without one.
std::vector<Length> to_length_list(const std::string& text, int line, const std::string& key) {
  const auto items = split(text, ',');
  std::optional<LengthUnit> trailing;
  if (const auto sp = items.back().find_first_of(" \t"); sp != std::string::npos)
    trailing = to_length(items.back(), line, key).unit;
  std::vector<Length> out;
  for (const auto& item : items) {
    if (item.empty()) throw ConfigParseError(line, "key '" + key + "': empty list item");
    out.push_back(to_length(item, line, key, trailing));
  }
  return out;
}

std::vector<bool> to_bool_list(const std::string& text, int line, const std::string& key) {
  std::vector<bool> out;
  for (const auto& item : split(text, ',')) out.push_back(to_bool(item, line, key));
  return out;
}

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string fmt(const Length& l) { return fmt(l.value) + " " + std::string(to_string(l.unit)); }

std::string fmt(bool b) { return b ? "true" : "false"; }

template <class T, class F>
std::string join(const std::vector<T>& v, F f) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + f(v[i]);
  return out;
}

// Converts library exceptions raised while interpreting a value into parse
// errors pointing at its line.
template <class F>
auto at_line(int line, F f) {
  try {
    return f();
  } catch (const ConfigParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigParseError(line, e.what());
  }
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  Reader r(text);
  RunConfig c;
  ModelTemplate& m = c.model;

  {
    const Raw kind = r.require("experiment", "kind");
    c.experiment = at_line(kind.line, [&] { return parse_experiment_kind(kind.value); });
  }
  if (auto v = r.take("experiment", "name")) c.name = v->value;
  {
    const Raw kind = r.require("model", "kind");
    m.kind = at_line(kind.line, [&] { return parse_model_kind(kind.value); });
  }
  const bool sm = m.kind == ModelKind::ShinMetiu;
  const bool pinned = m.kind == ModelKind::PinnedDipole;

  // cavity first: omega feeds the coupling and the default gauge-dependent checks
  const Raw omega_raw = r.require("cavity", "omega");
  const double omega = to_double(omega_raw.value, omega_raw.line, "omega");
  m.fock.omega = omega;
  if (auto v = r.take("cavity", "n_fock")) m.fock.n_fock = to_unsigned<std::size_t>(v->value, v->line, "n_fock");
  const auto lam = r.take("cavity", "lambda");
  const auto goo = r.take("cavity", "g_over_omega");
  if (!lam && !goo) throw ConfigParseError(0, "[cavity] needs one of 'lambda' or 'g_over_omega'");
  if (lam && goo) {
    const double l = to_double(lam->value, lam->line, "lambda");
    const double g = to_double(goo->value, goo->line, "g_over_omega");
    try {
      m.coupling = CavityCoupling::from_both(omega, l, g);
    } catch (const std::exception&) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "'lambda' (line %d) and 'g_over_omega' contradict: (g/omega) sqrt(2 omega) = %.10g",
                    lam->line, g * std::sqrt(2.0 * omega));
      throw ConfigParseError(goo->line, buf);
    }
  } else if (lam) {
    const double l = to_double(lam->value, lam->line, "lambda");
    m.coupling = at_line(lam->line, [&] { return CavityCoupling::from_lambda(omega, l); });
  } else {
    const double g = to_double(goo->value, goo->line, "g_over_omega");
    m.coupling = at_line(goo->line, [&] { return CavityCoupling::from_g_over_omega(omega, g); });
  }
  c.lambda_given = lam.has_value();
  c.g_over_omega_given = goo.has_value();
  if (auto v = r.take("cavity", "gauge")) m.gauge = at_line(v->line, [&] { return parse_gauge(v->value); });
  if (auto v = r.take("cavity", "self_polarization"))
    m.coupling.self_polarization = to_bool(v->value, v->line, "self_polarization");
  if (auto v = r.take("cavity", "diamagnetic")) m.coupling.diamagnetic = to_bool(v->value, v->line, "diamagnetic");
  if (auto v = r.take("cavity", "subtract_vacuum")) m.subtract_vacuum = to_bool(v->value, v->line, "subtract_vacuum");

  if (sm) {
    auto num = [&](const char* key, double& dst) {
      if (auto v = r.take("model", key)) dst = to_double(v->value, v->line, key);
    };
    auto len = [&](const char* key, double& dst) {
      if (auto v = r.take("model", key)) dst = to_length(v->value, v->line, key).in_bohr();
    };
    num("Z", m.shin_metiu.Z);
    num("Z_plus", m.shin_metiu.Z_plus);
    num("Z_minus", m.shin_metiu.Z_minus);
    num("nuclear_mass", m.shin_metiu.nuclear_mass);
    num("electron_mass", m.shin_metiu.electron_mass);
    len("L", m.shin_metiu.L);
    len("R_c", m.shin_metiu.R_c);
    len("R_f", m.shin_metiu.R_f);
  }
  if (m.kind == ModelKind::ScreenedHydrogen)
    if (auto v = r.take("model", "Z")) m.hydrogen.Z = to_double(v->value, v->line, "Z");
  if (pinned) {
    const Raw v = r.require("model", "dipole");
    m.pinned_dipole = to_length(v.value, v.line, "dipole").in_bohr();
  }
  if (m.kind == ModelKind::HarmonicWell)
    if (auto v = r.take("model", "harmonic_omega")) m.harmonic_omega = to_double(v->value, v->line, "harmonic_omega");
  if (!pinned) {
    if (auto v = r.take("model", "center")) m.center = to_length(v->value, v->line, "center");
    if (auto v = r.take("grid", "electron_box")) m.electron_box = to_length(v->value, v->line, "electron_box");
    if (auto v = r.take("grid", "electron_spacing")) m.electron_spacing = to_length(v->value, v->line, "electron_spacing");
  }
  if (sm) {
    if (auto v = r.take("grid", "nuclear_box")) m.nuclear_box = to_length(v->value, v->line, "nuclear_box");
    if (auto v = r.take("grid", "nuclear_spacing")) m.nuclear_spacing = to_length(v->value, v->line, "nuclear_spacing");
  }

  if (auto v = r.take("solver", "k")) c.solver.k = to_unsigned<std::size_t>(v->value, v->line, "k");
  if (auto v = r.take("solver", "tol")) c.solver.tol = to_double(v->value, v->line, "tol");
  if (auto v = r.take("solver", "max_iter")) c.solver.max_iter = to_unsigned<std::size_t>(v->value, v->line, "max_iter");
  if (auto v = r.take("solver", "seed")) c.solver.seed = to_unsigned<std::uint64_t>(v->value, v->line, "seed");
  if (auto v = r.take("solver", "krylov_dim"))
    c.solver.krylov_dim = to_unsigned<std::size_t>(v->value, v->line, "krylov_dim");

  if (c.experiment == ExperimentKind::BoxSweep) {
    const Raw b = r.require("experiment", "boxes");
    c.boxes = to_length_list(b.value, b.line, "boxes");
    if (auto v = r.take("experiment", "toggle")) c.toggle = at_line(v->line, [&] { return parse_toggle(v->value); });
  }
  if (c.experiment == ExperimentKind::BoxSweep || c.experiment == ExperimentKind::TranslationTest)
    if (auto v = r.take("experiment", "toggle_values")) c.toggle_values = to_bool_list(v->value, v->line, "toggle_values");
  if (c.experiment == ExperimentKind::TranslationTest)
    if (auto v = r.take("experiment", "shifts")) {
      c.shifts_bohr.clear();
      for (const Length& l : to_length_list(v->value, v->line, "shifts")) c.shifts_bohr.push_back(l.in_bohr());
    }

  if (auto v = r.take("output", "csv")) c.csv_path = v->value;
  if (auto v = r.take("output", "manifest")) c.manifest_path = v->value;

  r.reject_unused("experiment '" + std::string(to_string(c.experiment)) + "' with model '" +
                  std::string(to_string(m.kind)) + "'");
  c.validate();
  return c;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigurationError(msg); };
  if (solver.k == 0) fail("solver k must be at least 1");
  if (!(solver.tol > 0.0)) fail("solver tol must be positive");
  if (solver.max_iter == 0) fail("solver max_iter must be positive");
  if (csv_path.empty() || manifest_path.empty()) fail("output paths must not be empty");
  if (csv_path == manifest_path) fail("csv and manifest paths must differ");
  switch (experiment) {
    case ExperimentKind::BoxSweep:
      if (boxes.empty()) fail("box_sweep needs at least one box");
      for (std::size_t i = 1; i < boxes.size(); ++i)
        if (!(boxes[i].in_bohr() > boxes[i - 1].in_bohr())) fail("box_sweep boxes must be ascending");
      if (toggle_values.empty()) fail("toggle_values must not be empty");
      if (toggle == Toggle::SelfPolarization && model.gauge != Gauge::Length)
        fail("toggle self_polarization needs gauge = length");
      if (toggle == Toggle::Diamagnetic && model.gauge != Gauge::Coulomb)
        fail("toggle diamagnetic needs gauge = coulomb");
      if (model.kind == ModelKind::PinnedDipole) fail("box_sweep needs a model with an electron grid");
      break;
    case ExperimentKind::GaugeCompare:
      if (model.kind == ModelKind::PinnedDipole) fail("gauge_compare needs a model with an electron grid");
      break;
    case ExperimentKind::TranslationTest:
      if (model.gauge != Gauge::Length) fail("translation_test needs gauge = length");
      if (model.kind == ModelKind::PinnedDipole) fail("translation_test needs a model with an electron grid");
      if (shifts_bohr.empty() || toggle_values.empty()) fail("translation_test needs shifts and toggle_values");
      break;
    case ExperimentKind::FindResonance:
      if (model.kind == ModelKind::PinnedDipole) fail("find_resonance needs a model with an electron grid");
      break;
    case ExperimentKind::Spectrum:
      break;
  }
  // Grid construction and flag checks surface here rather than mid-run.
  if (experiment == ExperimentKind::BoxSweep) {
    for (const Length& b : boxes) (void)model.instantiate(b);
  } else if (experiment == ExperimentKind::GaugeCompare) {
    ModelTemplate t = model;
    t.gauge = Gauge::Length;
    t.coupling.diamagnetic = t.coupling.self_polarization = true;
    (void)t.instantiate();
  } else {
    (void)model.instantiate();
  }
}

std::vector<ConfigEntry> resolved_entries(const RunConfig& c) {
  const ModelTemplate& m = c.model;
  const bool sm = m.kind == ModelKind::ShinMetiu;
  const bool pinned = m.kind == ModelKind::PinnedDipole;
  std::vector<ConfigEntry> e;
  auto add = [&](const char* s, const char* k, std::string v) { e.push_back({s, k, std::move(v)}); };

  add("experiment", "kind", std::string(to_string(c.experiment)));
  if (!c.name.empty()) add("experiment", "name", c.name);
  if (c.experiment == ExperimentKind::BoxSweep) {
    add("experiment", "boxes", join(c.boxes, [](const Length& l) { return fmt(l); }));
    add("experiment", "toggle", std::string(to_string(c.toggle)));
  }
  if (c.experiment == ExperimentKind::BoxSweep || c.experiment == ExperimentKind::TranslationTest)
    add("experiment", "toggle_values", join(c.toggle_values, [](bool b) { return fmt(b); }));
  if (c.experiment == ExperimentKind::TranslationTest)
    add("experiment", "shifts", join(c.shifts_bohr, [](double v) { return fmt(Length::bohr(v)); }));

  add("model", "kind", std::string(to_string(m.kind)));
  if (sm) {
    add("model", "Z", fmt(m.shin_metiu.Z));
    add("model", "Z_plus", fmt(m.shin_metiu.Z_plus));
    add("model", "Z_minus", fmt(m.shin_metiu.Z_minus));
    add("model", "nuclear_mass", fmt(m.shin_metiu.nuclear_mass));
    add("model", "electron_mass", fmt(m.shin_metiu.electron_mass));
    add("model", "L", fmt(Length::bohr(m.shin_metiu.L)));
    add("model", "R_c", fmt(Length::bohr(m.shin_metiu.R_c)));
    add("model", "R_f", fmt(Length::bohr(m.shin_metiu.R_f)));
  }
  if (m.kind == ModelKind::ScreenedHydrogen) add("model", "Z", fmt(m.hydrogen.Z));
  if (pinned) add("model", "dipole", fmt(Length::bohr(m.pinned_dipole)));
  if (m.kind == ModelKind::HarmonicWell) add("model", "harmonic_omega", fmt(m.harmonic_omega));
  if (!pinned) {
    add("model", "center", fmt(m.center));
    add("grid", "electron_box", fmt(m.electron_box));
    add("grid", "electron_spacing", fmt(m.electron_spacing));
  }
  if (sm) {
    add("grid", "nuclear_box", fmt(m.nuclear_box));
    add("grid", "nuclear_spacing", fmt(m.nuclear_spacing));
  }

  add("cavity", "omega", fmt(m.fock.omega));
  add("cavity", "n_fock", std::to_string(m.fock.n_fock));
  if (c.lambda_given || !c.g_over_omega_given) add("cavity", "lambda", fmt(m.coupling.lambda()));
  if (c.g_over_omega_given) add("cavity", "g_over_omega", fmt(m.coupling.g_over_omega()));
  add("cavity", "gauge", std::string(to_string(m.gauge)));
  add("cavity", "self_polarization", fmt(m.coupling.self_polarization));
  add("cavity", "diamagnetic", fmt(m.coupling.diamagnetic));
  add("cavity", "subtract_vacuum", fmt(m.subtract_vacuum));

  add("solver", "k", std::to_string(c.solver.k));
  add("solver", "tol", fmt(c.solver.tol));
  add("solver", "max_iter", std::to_string(c.solver.max_iter));
  add("solver", "seed", std::to_string(c.solver.seed));
  add("solver", "krylov_dim", std::to_string(c.solver.krylov_dim));

  add("output", "csv", c.csv_path);
  add("output", "manifest", c.manifest_path);
  return e;
}

std::string serialize_config(const RunConfig& c) {
  std::string out = "# cavity_ed run config, grammar v" + std::to_string(kConfigGrammarVersion) + "\n";
  std::string section;
  for (const auto& [s, k, v] : resolved_entries(c)) {
    if (s != section) {
      out += "\n[" + s + "]\n";
      section = s;
    }
    out += k + " = " + v + "\n";
  }
  return out;
}

}  // namespace cavityed
