#pragma once

#include <cstddef>

#include "cavityed/band_matrix.hpp"

namespace cavityed {

// Single cavity mode truncated to the lowest n_fock number states.
struct FockSpace {
  std::size_t n_fock = 40;
  double omega = 0.0;  // hartree

  void validate() const;
  bool operator==(const FockSpace&) const = default;
};

struct LadderOperators {
  BandMatrix a;         // a[n-1, n] = sqrt(n)
  BandMatrix a_dagger;
};

LadderOperators ladder_operators(const FockSpace& space);

// Displacement-coordinate matrices, all built from the same truncated ladder.
// p_coord_sq and d2_dp2 are matrix squares within the truncated space.
struct CoordinateOperators {
  BandMatrix p_coord;     // (a^+ + a) / sqrt(2 omega)
  BandMatrix p_coord_sq;  // p_coord * p_coord
  BandMatrix d2_dp2;      // -(i sqrt(omega/2) (a^+ - a))^2
};

CoordinateOperators coordinate_operators(const FockSpace& space);

// diag(n omega), or diag((n + 1/2) omega) when the vacuum shift is kept.
BandMatrix photon_hamiltonian(const FockSpace& space, bool subtract_vacuum);

struct PinnedDipoleResult {
  double ground_energy = 0.0;  // vacuum-subtracted
  double expect_p = 0.0;
  double expect_N = 0.0;       // physical occupation
  double expect_Nprime = 0.0;  // naive occupation of the displacement coordinate
};

// Closed-form ground state of a mode coupled to a fixed classical dipole R0.
PinnedDipoleResult pinned_dipole_oracle(double dipole, double omega, double lambda, bool self_polarization);

}  // namespace cavityed
