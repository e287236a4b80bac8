#include "cavityed/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cavityed/error.hpp"

namespace cavityed {

CavityCoupling::CavityCoupling(double omega, double lambda, double g_over_omega)
    : omega_(omega), lambda_(lambda), g_over_omega_(g_over_omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ParameterError("CavityCoupling: omega must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParameterError("CavityCoupling: lambda must be non-negative");
}

CavityCoupling CavityCoupling::from_lambda(double omega, double lambda) {
  if (!(omega > 0.0)) throw ParameterError("CavityCoupling: omega must be positive");
  return CavityCoupling(omega, lambda, lambda / std::sqrt(2.0 * omega));
}

CavityCoupling CavityCoupling::from_g_over_omega(double omega, double g_over_omega) {
  if (!(omega > 0.0)) throw ParameterError("CavityCoupling: omega must be positive");
  return CavityCoupling(omega, g_over_omega * std::sqrt(2.0 * omega), g_over_omega);
}

CavityCoupling CavityCoupling::from_both(double omega, double lambda, double g_over_omega) {
  const CavityCoupling derived = from_g_over_omega(omega, g_over_omega);
  if (std::abs(derived.lambda() - lambda) > 1e-12 * std::max(std::abs(lambda), 1e-300))
    throw ParameterError("CavityCoupling: lambda and g_over_omega disagree");
  return CavityCoupling(omega, lambda, g_over_omega);
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::ShinMetiu: return "shin_metiu";
    case ModelKind::ScreenedHydrogen: return "screened_hydrogen";
    case ModelKind::PinnedDipole: return "pinned_dipole";
    case ModelKind::HarmonicWell: return "harmonic_well";
  }
  return "unknown";
}

std::string_view to_string(Gauge gauge) { return gauge == Gauge::Length ? "length" : "coulomb"; }

ModelKind parse_model_kind(std::string_view text) {
  for (ModelKind k : {ModelKind::ShinMetiu, ModelKind::ScreenedHydrogen, ModelKind::PinnedDipole, ModelKind::HarmonicWell})
    if (text == to_string(k)) return k;
  throw ParameterError("unknown model kind '" + std::string(text) + "'");
}

Gauge parse_gauge(std::string_view text) {
  if (text == "length") return Gauge::Length;
  if (text == "coulomb") return Gauge::Coulomb;
  throw ParameterError("unknown gauge '" + std::string(text) + "' (expected length or coulomb)");
}

void ModelSpec::validate() const {
  fock.validate();
  if (std::abs(coupling.omega() - fock.omega) > 1e-15 * fock.omega)
    throw ConfigurationError("ModelSpec: coupling and Fock space disagree on omega");
  if (gauge == Gauge::Length && !coupling.diamagnetic)
    throw ConfigurationError("the diamagnetic flag only applies to the Coulomb gauge");
  if (gauge == Gauge::Coulomb && !coupling.self_polarization)
    throw ConfigurationError("the self-polarization flag only applies to the length gauge");
  switch (kind) {
    case ModelKind::ShinMetiu: {
      shin_metiu.validate();
      if (!electron_grid || !nuclear_grid) throw ConfigurationError("Shin-Metiu model needs electron and nuclear grids");
      for (std::size_t i = 0; i < nuclear_grid->size(); ++i) {
        const double X = nuclear_grid->coordinate(i) - frame_origin;
        if (X == 0.5 * shin_metiu.L || X == -0.5 * shin_metiu.L)
          throw ConfigurationError("nuclear grid contains a pinned-nucleus position");
      }
      break;
    }
    case ModelKind::ScreenedHydrogen:
      hydrogen.validate();
      [[fallthrough]];
    case ModelKind::HarmonicWell:
      if (!electron_grid) throw ConfigurationError("model needs an electron grid");
      if (nuclear_grid) throw ConfigurationError("model has no nucleus; remove the nuclear grid");
      if (kind == ModelKind::HarmonicWell && !(harmonic_omega > 0.0))
        throw ParameterError("harmonic well frequency must be positive");
      break;
    case ModelKind::PinnedDipole:
      if (gauge != Gauge::Length) throw ConfigurationError("the pinned dipole is defined in the length gauge only");
      if (!std::isfinite(pinned_dipole)) throw ParameterError("pinned dipole must be finite");
      break;
  }
}

std::vector<Subsystem> matter_subsystems(const ModelSpec& model) {
  switch (model.kind) {
    case ModelKind::ShinMetiu:
      return {{std::string(kNucleus), model.nuclear_grid->size()}, {std::string(kElectron), model.electron_grid->size()}};
    case ModelKind::ScreenedHydrogen:
    case ModelKind::HarmonicWell:
      return {{std::string(kElectron), model.electron_grid->size()}};
    case ModelKind::PinnedDipole:
      return {{std::string(kDipole), 1}};
  }
  return {};
}

std::vector<double> matter_potential(const ModelSpec& model) {
  const double o = model.frame_origin;
  switch (model.kind) {
    case ModelKind::ShinMetiu: {
      const auto& gx = *model.electron_grid;
      const auto& gX = *model.nuclear_grid;
      std::vector<double> v(gX.size() * gx.size());
      for (std::size_t a = 0; a < gX.size(); ++a)
        for (std::size_t i = 0; i < gx.size(); ++i)
          v[a * gx.size() + i] = shinmetiu_potential(gx.coordinate(i), gX.coordinate(a), model.shin_metiu, o);
      return v;
    }
    case ModelKind::ScreenedHydrogen: {
      const auto& gx = *model.electron_grid;
      std::vector<double> v(gx.size());
      for (std::size_t i = 0; i < gx.size(); ++i) v[i] = screened_hydrogen_potential(gx.coordinate(i) - o, model.hydrogen);
      return v;
    }
    case ModelKind::HarmonicWell: {
      const auto& gx = *model.electron_grid;
      const double w2 = model.harmonic_omega * model.harmonic_omega;
      std::vector<double> v(gx.size());
      for (std::size_t i = 0; i < gx.size(); ++i) {
        const double x = gx.coordinate(i) - o;
        v[i] = 0.5 * w2 * x * x;
      }
      return v;
    }
    case ModelKind::PinnedDipole:
      return {0.0};
  }
  return {};
}

std::vector<double> matter_dipole(const ModelSpec& model) {
  switch (model.kind) {
    case ModelKind::ShinMetiu: {
      const auto& gx = *model.electron_grid;
      const auto& gX = *model.nuclear_grid;
      const double Z = model.shin_metiu.Z;
      std::vector<double> r(gX.size() * gx.size());
      for (std::size_t a = 0; a < gX.size(); ++a)
        for (std::size_t i = 0; i < gx.size(); ++i) r[a * gx.size() + i] = -gx.coordinate(i) + Z * gX.coordinate(a);
      return r;
    }
    case ModelKind::ScreenedHydrogen:
    case ModelKind::HarmonicWell: {
      const auto& gx = *model.electron_grid;
      std::vector<double> r(gx.size());
      for (std::size_t i = 0; i < gx.size(); ++i) r[i] = -gx.coordinate(i);
      return r;
    }
    case ModelKind::PinnedDipole:
      return {model.pinned_dipole};
  }
  return {};
}

namespace {

struct Layout {
  std::vector<Subsystem> subsystems;
  std::optional<std::size_t> nucleus, electron;
  std::size_t matter_first = 0;
};

Layout make_layout(const ModelSpec& model, bool with_photon) {
  Layout l;
  if (with_photon) l.subsystems.push_back({std::string(kPhoton), model.fock.n_fock});
  l.matter_first = l.subsystems.size();
  for (auto& s : matter_subsystems(model)) {
    if (s.name == kNucleus) l.nucleus = l.subsystems.size();
    if (s.name == kElectron) l.electron = l.subsystems.size();
    l.subsystems.push_back(std::move(s));
  }
  return l;
}

KroneckerTerm empty_term(const Layout& l, std::string label, double coefficient) {
  KroneckerTerm t;
  t.label = std::move(label);
  t.coefficient = coefficient;
  t.factors.resize(l.subsystems.size());
  return t;
}

JointDiagonal matter_joint(const Layout& l, std::vector<double> values) {
  return {l.matter_first, l.subsystems.size() - 1, std::move(values)};
}

void add_matter_terms(const ModelSpec& model, const Layout& l, std::vector<KroneckerTerm>& terms) {
  if (l.electron) {
    auto t = empty_term(l, "kinetic_electron", 1.0);
    const double m = model.kind == ModelKind::ShinMetiu ? model.shin_metiu.electron_mass : 1.0;
    t.factors[*l.electron] = kinetic_operator(*model.electron_grid, m);
    terms.push_back(std::move(t));
  }
  if (l.nucleus) {
    auto t = empty_term(l, "kinetic_nucleus", 1.0);
    t.factors[*l.nucleus] = kinetic_operator(*model.nuclear_grid, model.shin_metiu.nuclear_mass);
    terms.push_back(std::move(t));
  }
  if (model.kind != ModelKind::PinnedDipole) {
    auto t = empty_term(l, "potential", 1.0);
    t.joint = matter_joint(l, matter_potential(model));
    terms.push_back(std::move(t));
  }
}

}  // namespace

HamiltonianSpec build_length_gauge(const ModelSpec& model) {
  if (model.gauge != Gauge::Length) throw ConfigurationError("build_length_gauge: model is not in the length gauge");
  model.validate();
  const Layout l = make_layout(model, true);
  HamiltonianSpec h;
  h.subsystems = l.subsystems;
  h.field = ScalarField::Real;
  add_matter_terms(model, l, h.terms);

  const double w = model.coupling.omega();
  const double lambda = model.coupling.lambda();
  const auto ops = coordinate_operators(model.fock);
  {
    BandMatrix photon = ops.d2_dp2.scaled(-0.5) + ops.p_coord_sq.scaled(0.5 * w * w);
    if (model.subtract_vacuum) photon = photon + BandMatrix::identity(model.fock.n_fock).scaled(-0.5 * w);
    auto t = empty_term(l, "photon", 1.0);
    t.factors[0] = std::move(photon);
    h.terms.push_back(std::move(t));
  }
  if (lambda != 0.0) {
    const auto dipole = matter_dipole(model);
    auto bilinear = empty_term(l, "bilinear", -w * lambda);
    bilinear.factors[0] = ops.p_coord;
    bilinear.joint = matter_joint(l, dipole);
    h.terms.push_back(std::move(bilinear));
    if (model.coupling.self_polarization) {
      std::vector<double> r2(dipole.size());
      for (std::size_t i = 0; i < r2.size(); ++i) r2[i] = dipole[i] * dipole[i];
      auto sp = empty_term(l, "self_polarization", 0.5 * lambda * lambda);
      sp.joint = matter_joint(l, std::move(r2));
      h.terms.push_back(std::move(sp));
    }
  }
  return h;
}

HamiltonianSpec build_coulomb_gauge(const ModelSpec& model) {
  if (model.gauge != Gauge::Coulomb) throw ConfigurationError("build_coulomb_gauge: model is not in the Coulomb gauge");
  model.validate();
  const Layout l = make_layout(model, true);
  HamiltonianSpec h;
  h.subsystems = l.subsystems;
  h.field = ScalarField::Complex;
  add_matter_terms(model, l, h.terms);

  const double lambda = model.coupling.lambda();
  {
    auto t = empty_term(l, "photon", 1.0);
    t.factors[0] = photon_hamiltonian(model.fock, model.subtract_vacuum);
    h.terms.push_back(std::move(t));
  }
  if (lambda == 0.0) return h;

  // Coulomb-gauge coordinate q_c = (a^+ + a)/sqrt(2 w), same matrix as p_coord.
  const auto ops = coordinate_operators(model.fock);
  struct Particle {
    std::size_t slot;
    const Grid1D* grid;
    double charge, mass;
  };
  std::vector<Particle> particles;
  if (l.electron) {
    const double m = model.kind == ModelKind::ShinMetiu ? model.shin_metiu.electron_mass : 1.0;
    particles.push_back({*l.electron, &*model.electron_grid, -1.0, m});
  }
  if (l.nucleus) particles.push_back({*l.nucleus, &*model.nuclear_grid, model.shin_metiu.Z, model.shin_metiu.nuclear_mass});

  double diamagnetic_weight = 0.0;
  for (const auto& p : particles) {
    auto t = empty_term(l, "paramagnetic_" + h.subsystems[p.slot].name, -(p.charge / p.mass) * lambda);
    t.factors[0] = ops.p_coord;
    t.factors[p.slot] = momentum_operator(*p.grid);
    h.terms.push_back(std::move(t));
    diamagnetic_weight += p.charge * p.charge / (2.0 * p.mass);
  }
  if (model.coupling.diamagnetic) {
    auto t = empty_term(l, "diamagnetic", diamagnetic_weight * lambda * lambda);
    t.factors[0] = ops.p_coord_sq;
    h.terms.push_back(std::move(t));
  }
  return h;
}

HamiltonianSpec build_hamiltonian(const ModelSpec& model) {
  return model.gauge == Gauge::Length ? build_length_gauge(model) : build_coulomb_gauge(model);
}

HamiltonianSpec build_matter_hamiltonian(const ModelSpec& model) {
  if (model.kind == ModelKind::PinnedDipole) throw ConfigurationError("the pinned dipole has no matter Hamiltonian");
  ModelSpec m = model;
  m.gauge = Gauge::Length;
  m.coupling.diamagnetic = true;
  m.validate();
  const Layout l = make_layout(m, false);
  HamiltonianSpec h;
  h.subsystems = l.subsystems;
  h.field = ScalarField::Real;
  add_matter_terms(m, l, h.terms);
  return h;
}

MatterSpectrum bare_matter_spectrum(const ModelSpec& model, std::size_t k, const LanczosOptions& options) {
  if (k == 0) throw ParameterError("bare_matter_spectrum: k must be at least 1");
  const TensorOperator<double> op(build_matter_hamiltonian(model));
  LanczosOptions opts = options;
  opts.k = k;
  MatterSpectrum out;
  out.spectrum = lowest_eigenpairs<double>(
      [&op](std::span<const double> x, std::span<double> y) { op.apply(x, y); }, op.dimension(), opts);
  // The harmonic test well confines every state.
  for (double e : out.spectrum.eigenvalues) out.bound.push_back(model.kind == ModelKind::HarmonicWell || e < 0.0);
  return out;
}

double extension_criterion(double lambda, double epsilon) {
  if (!(epsilon < 0.0)) throw DomainError("extension_criterion: defined for bound states (epsilon < 0) only");
  if (!(lambda >= 0.0)) throw ParameterError("extension_criterion: lambda must be non-negative");
  return lambda * lambda / (4.0 * epsilon * epsilon);
}

}  // namespace cavityed
