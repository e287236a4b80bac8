#include "cavityed/photon.hpp"

#include <cmath>
#include <vector>

#include "cavityed/error.hpp"

namespace cavityed {

void FockSpace::validate() const {
  if (n_fock < 2) throw ParameterError("FockSpace: need at least 2 number states");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ParameterError("FockSpace: omega must be positive");
}

LadderOperators ladder_operators(const FockSpace& space) {
  space.validate();
  const std::size_t n = space.n_fock;
  std::vector<double> sqrt_n(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) sqrt_n[k] = std::sqrt(static_cast<double>(k + 1));
  LadderOperators ops{BandMatrix(n), BandMatrix(n)};
  ops.a.add_diagonal(1, sqrt_n);
  ops.a_dagger.add_diagonal(-1, sqrt_n);
  return ops;
}

CoordinateOperators coordinate_operators(const FockSpace& space) {
  const auto [a, ad] = ladder_operators(space);
  const double w = space.omega;
  BandMatrix p = (ad + a).scaled(1.0 / std::sqrt(2.0 * w));
  // conjugate momentum pi = i sqrt(w/2) (a^+ - a); d2_dp2 = -pi^2
  BandMatrix pi = (ad + a.scaled(-1.0)).scaled(Complex(0.0, std::sqrt(0.5 * w)));
  BandMatrix pi_sq = pi * pi;
  CoordinateOperators ops{p, p * p, pi_sq.scaled(-1.0)};
  // all three are real matrices; drop the zero imaginary parts
  for (BandMatrix* m : {&ops.p_coord, &ops.p_coord_sq, &ops.d2_dp2}) {
    BandMatrix clean(m->dim());
    for (const auto& d : m->diagonals()) {
      std::vector<double> re(d.values.size());
      for (std::size_t k = 0; k < re.size(); ++k) re[k] = d.values[k].real();
      clean.add_diagonal(d.offset, re);
    }
    *m = std::move(clean);
  }
  return ops;
}

BandMatrix photon_hamiltonian(const FockSpace& space, bool subtract_vacuum) {
  space.validate();
  std::vector<double> e(space.n_fock);
  for (std::size_t n = 0; n < e.size(); ++n)
    e[n] = (static_cast<double>(n) + (subtract_vacuum ? 0.0 : 0.5)) * space.omega;
  return BandMatrix::diagonal(e);
}

PinnedDipoleResult pinned_dipole_oracle(double dipole, double omega, double lambda, bool self_polarization) {
  if (!(omega > 0.0)) throw ParameterError("pinned_dipole_oracle: omega must be positive");
  // Completing the square: (w^2/2)(p - lR/w)^2 - [SP off] (lR)^2/2.
  const double lr = lambda * dipole;
  PinnedDipoleResult r;
  r.expect_p = lr / omega;
  r.expect_N = 0.0;
  r.expect_Nprime = lr * lr / (2.0 * omega);
  r.ground_energy = self_polarization ? 0.0 : -0.5 * lr * lr;
  return r;
}

}  // namespace cavityed
