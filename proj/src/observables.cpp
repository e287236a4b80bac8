#include "cavityed/observables.hpp"

#include <cmath>
#include <string>

#include "cavityed/error.hpp"

namespace cavityed {

namespace {

template <class T>
double abs2(T v) {
  if constexpr (std::is_same_v<T, double>) {
    return v * v;
  } else {
    return std::norm(v);
  }
}

std::size_t matter_size(const ModelSpec& model) {
  std::size_t m = 1;
  for (const auto& s : matter_subsystems(model)) m *= s.dim;
  return m;
}

template <class T>
void check_length(std::span<const T> psi, const ModelSpec& model) {
  if (psi.size() != model.fock.n_fock * matter_size(model))
    throw DimensionError("state length does not match the model dimensions");
}

// Re <psi| F (x) diag(d) |psi> with F acting on the photon index; d empty = identity.
template <class T>
double photon_matter_expectation(std::span<const T> psi, std::size_t matter, const BandMatrix& photon,
                                 std::span<const double> d) {
  const auto nf = static_cast<long>(photon.dim());
  double acc = 0.0;
  for (const auto& diag : photon.diagonals()) {
    for (long i = 0; i < nf; ++i) {
      const long j = i + diag.offset;
      if (j < 0 || j >= nf) continue;
      const Complex f = diag.values[static_cast<std::size_t>(std::min(i, j))];
      const T* bra = psi.data() + static_cast<std::size_t>(i) * matter;
      const T* ket = psi.data() + static_cast<std::size_t>(j) * matter;
      Complex s(0.0, 0.0);
      for (std::size_t m = 0; m < matter; ++m) {
        const double w = d.empty() ? 1.0 : d[m];
        if constexpr (std::is_same_v<T, double>) {
          s += Complex(bra[m] * w * ket[m], 0.0);
        } else {
          s += std::conj(bra[m]) * w * ket[m];
        }
      }
      acc += (f * s).real();
    }
  }
  return acc;
}

template <class T>
double squared_norm(std::span<const T> psi) {
  double n = 0.0;
  for (const T& v : psi) n += abs2(v);
  return n;
}

}  // namespace

template <class T>
double dipole_expectation(std::span<const T> psi, const ModelSpec& model) {
  check_length(psi, model);
  const auto r = matter_dipole(model);
  const std::size_t m = r.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) acc += abs2(psi[i]) * r[i % m];
  return acc / squared_norm(psi);
}

template <class T>
double photon_coordinate_expectation(std::span<const T> psi, const ModelSpec& model) {
  check_length(psi, model);
  const auto ops = coordinate_operators(model.fock);
  return photon_matter_expectation(psi, matter_size(model), ops.p_coord, {}) / squared_norm(psi);
}

FieldExpectations field_expectations(std::span<const double> psi, const ModelSpec& model) {
  if (model.gauge != Gauge::Length) throw ConfigurationError("field_expectations: defined for length-gauge states");
  const double w = model.coupling.omega();
  const double lambda = model.coupling.lambda();
  const double p = photon_coordinate_expectation(psi, model);
  const double r = dipole_expectation(psi, model);
  FieldExpectations f;
  f.D_perp = w * lambda / (4.0 * kPi) * p;
  f.P_perp = lambda * lambda / (4.0 * kPi) * r;
  // 4 pi cancels analytically: E = w lambda <p> - lambda^2 <R>.
  f.E_perp = w * lambda * p - lambda * lambda * r;
  return f;
}

PhotonNumbers photon_numbers(std::span<const double> psi, const ModelSpec& model) {
  if (model.gauge != Gauge::Length) throw ConfigurationError("photon_numbers: defined for length-gauge states");
  check_length(psi, model);
  const double w = model.coupling.omega();
  const double shift = model.coupling.lambda() / w;
  const auto ops = coordinate_operators(model.fock);
  const std::size_t m = matter_size(model);
  const auto r = matter_dipole(model);
  std::vector<double> r2(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) r2[i] = r[i] * r[i];
  const double norm = squared_norm(psi);
  const BandMatrix id = BandMatrix::identity(model.fock.n_fock);

  const double momentum_sq = -photon_matter_expectation(psi, m, ops.d2_dp2, {}) / norm;
  const double p_sq = photon_matter_expectation(psi, m, ops.p_coord_sq, {}) / norm;
  const double p_r = photon_matter_expectation(psi, m, ops.p_coord, r) / norm;
  const double r_sq = photon_matter_expectation(psi, m, id, r2) / norm;

  PhotonNumbers n;
  n.N_naive = momentum_sq / (2.0 * w) + 0.5 * w * p_sq - 0.5;
  n.N_physical = momentum_sq / (2.0 * w) + 0.5 * w * (p_sq - 2.0 * shift * p_r + shift * shift * r_sq) - 0.5;
  return n;
}

template <class T>
std::vector<double> reduced_density(std::span<const T> psi, const ModelSpec& model, std::string_view subsystem) {
  check_length(psi, model);
  const auto matter = matter_subsystems(model);
  std::vector<std::size_t> dims{model.fock.n_fock};
  std::vector<std::string> names{std::string(kPhoton)};
  for (const auto& s : matter) {
    dims.push_back(s.dim);
    names.push_back(s.name);
  }
  std::size_t slot = names.size();
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == subsystem) slot = k;
  if (slot == names.size() || subsystem == kDipole)
    throw ConfigurationError("reduced_density: model has no subsystem '" + std::string(subsystem) + "'");

  std::size_t inner = 1;
  for (std::size_t k = slot + 1; k < dims.size(); ++k) inner *= dims[k];
  const std::size_t n = dims[slot];
  std::vector<double> rho(n, 0.0);
  for (std::size_t i = 0; i < psi.size(); ++i) rho[(i / inner) % n] += abs2(psi[i]);

  double spacing = 1.0;
  if (subsystem == kElectron) spacing = model.electron_grid->spacing();
  if (subsystem == kNucleus) spacing = model.nuclear_grid->spacing();
  const double scale = 1.0 / (squared_norm(psi) * spacing);
  for (double& v : rho) v *= scale;
  return rho;
}

template <class T>
ObservableSet evaluate_observables(std::span<const T> psi, const ModelSpec& model) {
  ObservableSet o;
  o.dipole_R = dipole_expectation(psi, model);
  o.photon_populations = reduced_density(psi, model, kPhoton);
  if (model.electron_grid) o.electron_density = reduced_density(psi, model, kElectron);
  if (model.has_nucleus()) o.nuclear_density = reduced_density(psi, model, kNucleus);
  if constexpr (std::is_same_v<T, double>) {
    if (model.gauge == Gauge::Length) {
      o.expect_p = photon_coordinate_expectation(psi, model);
      o.fields = field_expectations(psi, model);
      o.photons = photon_numbers(psi, model);
    }
  }
  return o;
}

template double dipole_expectation(std::span<const double>, const ModelSpec&);
template double dipole_expectation(std::span<const Complex>, const ModelSpec&);
template double photon_coordinate_expectation(std::span<const double>, const ModelSpec&);
template double photon_coordinate_expectation(std::span<const Complex>, const ModelSpec&);
template std::vector<double> reduced_density(std::span<const double>, const ModelSpec&, std::string_view);
template std::vector<double> reduced_density(std::span<const Complex>, const ModelSpec&, std::string_view);
template ObservableSet evaluate_observables(std::span<const double>, const ModelSpec&);
template ObservableSet evaluate_observables(std::span<const Complex>, const ModelSpec&);

}  // namespace cavityed
