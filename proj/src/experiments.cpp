#include "cavityed/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "cavityed/error.hpp"

namespace cavityed {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ModelSpec ModelTemplate::instantiate(std::optional<Length> electron_box_override, double shift) const {
  ModelSpec m;
  m.kind = kind;
  m.shin_metiu = shin_metiu;
  m.hydrogen = hydrogen;
  m.pinned_dipole = pinned_dipole;
  m.harmonic_omega = harmonic_omega;
  m.fock = fock;
  m.coupling = coupling;
  m.gauge = gauge;
  m.subtract_vacuum = subtract_vacuum;
  const double c = center.in_bohr();
  m.frame_origin = c + shift;
  if (kind != ModelKind::PinnedDipole) {
    const Length box = electron_box_override.value_or(electron_box);
    m.electron_grid = make_grid(box, electron_spacing.in_bohr(), c).shifted(shift);
  }
  if (kind == ModelKind::ShinMetiu) m.nuclear_grid = make_grid(nuclear_box, nuclear_spacing.in_bohr(), c).shifted(shift);
  m.validate();
  return m;
}

std::string_view to_string(Toggle t) { return t == Toggle::SelfPolarization ? "self_polarization" : "diamagnetic"; }

Toggle parse_toggle(std::string_view text) {
  if (text == "self_polarization") return Toggle::SelfPolarization;
  if (text == "diamagnetic") return Toggle::Diamagnetic;
  throw ParameterError("unknown toggle '" + std::string(text) + "' (expected self_polarization or diamagnetic)");
}

std::vector<SweepRow> box_sweep(const ModelTemplate& model, const std::vector<Length>& boxes, Toggle toggle,
                                const std::vector<bool>& values, const LanczosOptions& options) {
  for (std::size_t i = 1; i < boxes.size(); ++i)
    if (!(boxes[i].in_bohr() > boxes[i - 1].in_bohr())) throw ParameterError("box_sweep: boxes must be ascending");
  if (toggle == Toggle::SelfPolarization && model.gauge != Gauge::Length)
    throw ConfigurationError("box_sweep: self_polarization toggle needs the length gauge");
  if (toggle == Toggle::Diamagnetic && model.gauge != Gauge::Coulomb)
    throw ConfigurationError("box_sweep: diamagnetic toggle needs the Coulomb gauge");

  std::vector<SweepRow> rows;
  for (const Length& box : boxes) {
    for (bool value : values) {
      const auto start = std::chrono::steady_clock::now();
      SweepRow row;
      row.box = box;
      ModelTemplate t = model;
      (toggle == Toggle::SelfPolarization ? t.coupling.self_polarization : t.coupling.diamagnetic) = value;
      row.self_polarization = t.coupling.self_polarization;
      row.diamagnetic = t.coupling.diamagnetic;
      row.D_perp = row.E_perp = row.N_physical = row.N_naive = row.dipole_R = kNaN;
      try {
        const ModelSpec spec = t.instantiate(box);
        row.n_photon = spec.fock.n_fock;
        row.n_electron = spec.electron_grid ? spec.electron_grid->size() : 0;
        row.n_nucleus = spec.nuclear_grid ? spec.nuclear_grid->size() : 0;
        const ModelSolution sol = solve_model(spec, options);
        row.eigenvalues = sol.eigenvalues;
        row.residuals = sol.residual_norms;
        row.converged = sol.all_converged();
        row.iterations = sol.iterations;
        row.warnings = sol.warnings;
        if (!sol.observables.empty()) {
          const ObservableSet& g = sol.observables.front();
          row.dipole_R = g.dipole_R;
          if (g.fields) {
            row.D_perp = g.fields->D_perp;
            row.E_perp = g.fields->E_perp;
          }
          if (g.photons) {
            row.N_physical = g.photons->N_physical;
            row.N_naive = g.photons->N_naive;
          }
        }
        row.status = row.converged ? "ok" : "partial";
      } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
      }
      row.wall_seconds = seconds_since(start);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

GaugeCompareResult gauge_compare(const ModelTemplate& model, const LanczosOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  struct Variant {
    const char* name;
    bool sp, dia;
  };
  const Variant variants[] = {{"both_on", true, true}, {"self_polarization_off", false, true}, {"diamagnetic_off", true, false}};
  GaugeCompareResult result;
  for (const auto& v : variants) {
    ModelTemplate lt = model;
    lt.gauge = Gauge::Length;
    lt.coupling.self_polarization = v.sp;
    lt.coupling.diamagnetic = true;
    ModelTemplate ct = model;
    ct.gauge = Gauge::Coulomb;
    ct.coupling.self_polarization = true;
    ct.coupling.diamagnetic = v.dia;
    const ModelSolution sl = solve_model(lt.instantiate(), options);
    const ModelSolution sc = solve_model(ct.instantiate(), options);
    const std::size_t n = std::min(sl.eigenvalues.size(), sc.eigenvalues.size());
    for (std::size_t i = 0; i < n; ++i) {
      GaugeCompareRow row;
      row.variant = v.name;
      row.index = i;
      row.E_length = sl.eigenvalues[i];
      row.E_coulomb = sc.eigenvalues[i];
      row.delta_hartree = row.E_length - row.E_coulomb;
      row.abs_delta_ev = std::abs(hartree_to_ev(row.delta_hartree));
      row.residual_length = sl.residual_norms[i];
      row.residual_coulomb = sc.residual_norms[i];
      row.converged = sl.converged[i] && sc.converged[i];
      if (i == 0) {
        row.warnings = sl.warnings;
        row.warnings.insert(row.warnings.end(), sc.warnings.begin(), sc.warnings.end());
      }
      result.rows.push_back(std::move(row));
    }
  }
  result.wall_seconds = seconds_since(start);
  return result;
}

std::vector<TranslationRow> translation_test(const ModelTemplate& model, const std::vector<double>& shifts,
                                             const std::vector<bool>& sp_values, const LanczosOptions& options) {
  if (model.gauge != Gauge::Length) throw ConfigurationError("translation_test: needs the length gauge");
  if (model.kind == ModelKind::PinnedDipole) throw ConfigurationError("translation_test: needs a model with a grid");
  const double margin = model.kind == ModelKind::ShinMetiu ? 0.5 * model.nuclear_box.in_bohr()
                                                           : 0.5 * model.electron_box.in_bohr();
  for (double mu : shifts)
    if (!std::isfinite(mu) || std::abs(mu) >= margin)
      throw ParameterError("translation_test: shift " + std::to_string(mu) + " bohr exceeds the box margin");
  const double charge_excess = model.kind == ModelKind::ShinMetiu ? model.shin_metiu.Z - 1.0 : -1.0;

  std::vector<TranslationRow> rows;
  for (bool sp : sp_values) {
    ModelTemplate t = model;
    t.coupling.self_polarization = sp;
    const ModelSpec reference_spec = t.instantiate();
    const ModelSolution reference = solve_model(reference_spec, options);
    const std::vector<double>& n0 = reference.observables.front().electron_density;
    for (double mu : shifts) {
      const auto start = std::chrono::steady_clock::now();
      const ModelSolution sol = mu == 0.0 ? reference : solve_model(t.instantiate(std::nullopt, mu), options);
      const ObservableSet& g = sol.observables.front();
      TranslationRow row;
      row.self_polarization = sp;
      row.mu_bohr = mu;
      // Shifted grid point i sits at x_i + mu, so n_mu(x_i + mu - mu) is index i.
      for (std::size_t i = 0; i < n0.size(); ++i)
        row.max_density_diff = std::max(row.max_density_diff, std::abs(g.electron_density[i] - n0[i]));
      row.eigenvalues = sol.eigenvalues;
      row.dipole_R = g.dipole_R;
      row.dipole_R_back = g.dipole_R - charge_excess * mu;
      row.E_perp = g.fields ? g.fields->E_perp : kNaN;
      row.N_physical = g.photons ? g.photons->N_physical : kNaN;
      row.N_naive = g.photons ? g.photons->N_naive : kNaN;
      row.residual = sol.residual_norms.front();
      row.converged = sol.all_converged();
      row.warnings = sol.warnings;
      row.wall_seconds = mu == 0.0 ? reference.wall_seconds : seconds_since(start);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

ResonanceResult find_resonance(const ModelTemplate& model, const LanczosOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  LanczosOptions opts = options;
  opts.k = std::max<std::size_t>(opts.k, 2);
  const MatterSpectrum ms = bare_matter_spectrum(model.instantiate(), opts.k, opts);
  const auto& e = ms.spectrum.eigenvalues;
  if (e.size() < 2 || !ms.bound[0] || !ms.bound[1])
    throw DomainError("find_resonance: bare matter has fewer than two bound states");
  ResonanceResult r;
  r.epsilon_1 = e[0];
  r.epsilon_2 = e[1];
  r.omega = e[1] - e[0];
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.extension_criterion_1 = e[0] < 0.0 ? extension_criterion(model.coupling.lambda(), e[0]) : nan;
  r.extension_criterion_2 = e[1] < 0.0 ? extension_criterion(model.coupling.lambda(), e[1]) : nan;
  r.matter_eigenvalues = e;
  r.residuals = ms.spectrum.residual_norms;
  r.converged = ms.spectrum.all_converged();
  r.wall_seconds = seconds_since(start);
  return r;
}

}  // namespace cavityed
