#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cavityed/error.hpp"
#include "cavityed/experiments.hpp"
#include "cavityed/solve.hpp"

using namespace cavityed;

namespace {

ModelSpec hydrogen(double box_bohr, double dx, std::size_t nf, double w, double lambda, Gauge g = Gauge::Length) {
  ModelSpec m;
  m.kind = ModelKind::ScreenedHydrogen;
  m.electron_grid = make_grid(Length::bohr(box_bohr), dx);
  m.fock = {nf, w};
  m.coupling = CavityCoupling::from_lambda(w, lambda);
  m.gauge = g;
  return m;
}

Eigen::VectorXd dense_eigs(const ModelSpec& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(build_hamiltonian(m).to_dense());
  return es.eigenvalues();
}

}  // namespace

TEST_CASE("coupling derivation") {
  const auto sm = CavityCoupling::from_g_over_omega(0.00231, 0.40748);
  CHECK(sm.lambda() == doctest::Approx(0.02770).epsilon(1e-3));
  CHECK(sm.lambda() == doctest::Approx(0.40748 * std::sqrt(2.0 * 0.00231)).epsilon(1e-15));
  const auto ry = CavityCoupling::from_g_over_omega(0.01368, 0.006);
  CHECK(ry.lambda() == doctest::Approx(9.924e-4).epsilon(1e-4));
  const auto back = CavityCoupling::from_lambda(0.01368, ry.lambda());
  CHECK(std::abs(back.g_over_omega() * std::sqrt(2.0 * 0.01368) - back.lambda()) <= 1e-12 * back.lambda());
  CHECK_NOTHROW(CavityCoupling::from_both(0.01368, ry.lambda(), 0.006));
  CHECK_THROWS_AS(CavityCoupling::from_both(0.01368, 1e-3, 0.006), ParameterError);
  CHECK_THROWS_AS(CavityCoupling::from_lambda(0.0, 0.1), ParameterError);
  CHECK_THROWS_AS(CavityCoupling::from_lambda(0.1, -0.1), ParameterError);
}

TEST_CASE("flag and gauge consistency") {
  ModelSpec m = hydrogen(20.0, 1.0, 3, 0.1, 0.1);
  m.coupling.diamagnetic = false;
  CHECK_THROWS_AS(m.validate(), ConfigurationError);
  m = hydrogen(20.0, 1.0, 3, 0.1, 0.1, Gauge::Coulomb);
  m.coupling.self_polarization = false;
  CHECK_THROWS_AS(m.validate(), ConfigurationError);
  ModelSpec p;
  p.kind = ModelKind::PinnedDipole;
  p.fock = {4, 0.1};
  p.coupling = CavityCoupling::from_lambda(0.1, 0.1);
  p.gauge = Gauge::Coulomb;
  CHECK_THROWS_AS(p.validate(), ConfigurationError);
  ModelSpec s;
  s.kind = ModelKind::ShinMetiu;
  s.fock = {4, 0.1};
  s.coupling = CavityCoupling::from_lambda(0.1, 0.1);
  s.electron_grid = make_grid(Length::bohr(20.0), 1.0);
  CHECK_THROWS_AS(s.validate(), ConfigurationError);
  s.nuclear_grid = Grid1D(3, s.shin_metiu.L / 2, -s.shin_metiu.L / 2);
  CHECK_THROWS_AS(s.validate(), ConfigurationError);
}

TEST_CASE("scalar field follows gauge") {
  CHECK(build_hamiltonian(hydrogen(20.0, 1.0, 3, 0.1, 0.1)).field == ScalarField::Real);
  CHECK(build_hamiltonian(hydrogen(20.0, 1.0, 3, 0.1, 0.1, Gauge::Coulomb)).field == ScalarField::Complex);
  for (const auto& t : build_hamiltonian(hydrogen(20.0, 1.0, 3, 0.1, 0.1)).terms)
    for (const auto& f : t.factors)
      if (f) CHECK(f->is_hermitian());
}

TEST_CASE("decoupled spectrum is the tensor sum, in both gauges") {
  const double w = 0.07;
  for (Gauge g : {Gauge::Length, Gauge::Coulomb}) {
    const ModelSpec m = hydrogen(30.0, 1.0, 4, w, 0.0, g);
    // matter block assembled by hand from the grid operators
    Eigen::MatrixXcd hm = kinetic_operator(*m.electron_grid, 1.0).to_dense();
    for (std::size_t i = 0; i < m.electron_grid->size(); ++i)
      hm(i, i) += screened_hydrogen_potential(m.electron_grid->coordinate(i), m.hydrogen);
    const Eigen::VectorXd matter = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(hm).eigenvalues();
    std::vector<double> sums;
    for (int n = 0; n < 4; ++n)
      for (Eigen::Index i = 0; i < matter.size(); ++i) sums.push_back(matter[i] + n * w);
    std::sort(sums.begin(), sums.end());
    LanczosOptions o;
    o.k = 6;
    o.tol = 1e-11;
    const auto s = solve_model(m, o);
    for (std::size_t i = 0; i < 6; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(sums[i]).epsilon(1e-10));
  }
}

TEST_CASE("pinned dipole model reproduces the analytic oracle") {
  for (bool sp : {true, false}) {
    ModelSpec p;
    p.kind = ModelKind::PinnedDipole;
    p.pinned_dipole = 1.0;
    p.fock = {40, 0.00231};
    p.coupling = CavityCoupling::from_g_over_omega(0.00231, 0.40748);
    p.coupling.self_polarization = sp;
    LanczosOptions o;
    o.k = 1;
    o.tol = 1e-12;
    const auto s = solve_model(p, o);
    const auto ref = pinned_dipole_oracle(1.0, 0.00231, p.coupling.lambda(), sp);
    CHECK(std::abs(s.eigenvalues[0] - ref.ground_energy) <= 1e-10);
    const auto& obs = s.observables[0];
    CHECK(std::abs(*obs.expect_p - ref.expect_p) <= 1e-8 * ref.expect_p);
    CHECK(std::abs(obs.photons->N_physical - ref.expect_N) <= 1e-10);
    CHECK(std::abs(obs.photons->N_naive - ref.expect_Nprime) <= 1e-10);
  }
}

TEST_CASE("extension criterion") {
  CHECK(extension_criterion(0.0, -0.3) == 0.0);
  CHECK(extension_criterion(0.1, -0.5) == doctest::Approx(0.01 / 1.0));
  CHECK_THROWS_AS(extension_criterion(0.1, 0.0), DomainError);
  CHECK_THROWS_AS(extension_criterion(0.1, 0.2), DomainError);
}

TEST_CASE("bare matter spectra") {
  LanczosOptions o;
  o.k = 3;
  o.tol = 1e-10;
  // harmonic test well: spacing omega up to O(dx^2)
  ModelSpec h;
  h.kind = ModelKind::HarmonicWell;
  h.harmonic_omega = 1.0;
  h.fock = {2, 1.0};
  h.coupling = CavityCoupling::from_lambda(1.0, 0.0);
  double prev_err = 1.0;
  for (double dx : {0.2, 0.1, 0.05}) {
    h.electron_grid = make_grid(Length::bohr(20.0), dx);
    const auto ms = bare_matter_spectrum(h, 3, o);
    const double err = std::abs(ms.spectrum.eigenvalues[1] - ms.spectrum.eigenvalues[0] - 1.0);
    CHECK(err < 0.01);
    if (prev_err < 1.0) CHECK(err / prev_err == doctest::Approx(0.25).epsilon(0.05));
    prev_err = err;
    CHECK(ms.bound[2]);
  }

  // screened hydrogen on a 200 angstrom box: the two lowest states and the resonance gap
  ModelSpec r = hydrogen(200.0 * kBohrPerAngstrom, 0.8, 2, 0.01368, 0.0);
  const auto ms = bare_matter_spectrum(r, 3, o);
  CHECK(ms.spectrum.eigenvalues[0] < ms.spectrum.eigenvalues[1]);
  CHECK(ms.spectrum.eigenvalues[1] < 0.0);
  CHECK(ms.spectrum.eigenvalues[1] - ms.spectrum.eigenvalues[0] == doctest::Approx(0.01368).epsilon(2e-4 / 0.01368));

  // Shin-Metiu on a 50 angstrom box: at least four bound states
  ModelSpec s;
  s.kind = ModelKind::ShinMetiu;
  s.electron_grid = make_grid(Length::angstrom(50.0), 0.8);
  s.nuclear_grid = make_grid(Length::angstrom(5.93), 0.08);
  s.fock = {2, 0.00231};
  s.coupling = CavityCoupling::from_lambda(0.00231, 0.0);
  LanczosOptions o4 = o;
  o4.k = 4;
  const auto sm = bare_matter_spectrum(s, 4, o4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(sm.bound[i]);
}

TEST_CASE("grid refinement converges at second order") {
  LanczosOptions o;
  o.k = 1;
  o.tol = 1e-12;
  std::vector<double> e;
  for (double dx : {0.4, 0.2, 0.1}) {
    ModelSpec r = hydrogen(60.0, dx, 2, 0.01368, 0.0);
    e.push_back(bare_matter_spectrum(r, 1, o).spectrum.eigenvalues[0]);
  }
  const double ratio = (e[0] - e[1]) / (e[1] - e[2]);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("SP-on energy is bounded below; dropping SP lowers it") {
  LanczosOptions o;
  o.k = 3;
  o.tol = 1e-11;
  ModelSpec on = hydrogen(40.0, 0.8, 12, 0.05, 0.05);
  ModelSpec off = on;
  off.coupling.self_polarization = false;
  ModelSpec bare = on;
  bare.coupling = CavityCoupling::from_lambda(0.05, 0.0);
  const auto son = solve_model(on, o), soff = solve_model(off, o), sb = solve_model(bare, o);
  for (std::size_t i = 0; i < 3; ++i) CHECK(soff.eigenvalues[i] <= son.eigenvalues[i] + 1e-10);
  CHECK(son.eigenvalues[0] >= sb.eigenvalues[0] - 1e-10);
}
