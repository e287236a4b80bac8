#pragma once

#include <cstddef>
#include <vector>

#include "cavityed/band_matrix.hpp"
#include "cavityed/units.hpp"

namespace cavityed {

// Uniform 1D grid: coordinate(i) = origin + i * spacing.
class Grid1D {
 public:
  Grid1D(std::size_t n_points, double spacing, double origin);

  std::size_t size() const { return n_points_; }
  double spacing() const { return spacing_; }
  double origin() const { return origin_; }
  double coordinate(std::size_t i) const { return origin_ + static_cast<double>(i) * spacing_; }
  double center() const { return coordinate(0) + 0.5 * static_cast<double>(n_points_ - 1) * spacing_; }
  double extent() const { return static_cast<double>(n_points_ - 1) * spacing_; }
  std::vector<double> coordinates() const;

  // Same points moved rigidly by shift (bohr).
  Grid1D shifted(double shift) const { return Grid1D(n_points_, spacing_, origin_ + shift); }

  bool operator==(const Grid1D&) const = default;

 private:
  std::size_t n_points_;
  double spacing_;
  double origin_;
};

// Odd-sized grid centered on `center` (bohr) covering box_length.
// n = floor(box / spacing) + 1, rounded down to odd.
Grid1D make_grid(Length box_length, double spacing, double center = 0.0);

// -(1/2m) d^2/dx^2 with the 3-point stencil and hard walls.
BandMatrix kinetic_operator(const Grid1D& grid, double mass);

// -i d/dx with the central first difference and hard walls.
BandMatrix momentum_operator(const Grid1D& grid);

struct ShinMetiuParams {
  double Z = 1.0;           // moving nucleus charge
  double Z_plus = 1.0;      // pinned nucleus at -L/2
  double Z_minus = 1.05;    // pinned nucleus at +L/2
  double nuclear_mass = 1836.0;
  double L = 18.8973;       // pinned-nuclei separation (bohr)
  double R_c = 2.8346;      // electron / pinned-nucleus softening (bohr)
  double R_f = 3.7795;      // electron / moving-nucleus softening (bohr)
  double electron_mass = 1.0;

  void validate() const;
  bool operator==(const ShinMetiuParams&) const = default;
};

struct ScreenedHydrogenParams {
  double Z = 1.0 / 20.0;

  void validate() const;
  bool operator==(const ScreenedHydrogenParams&) const = default;
};

// erf(|u|/R)/|u|, continuous at u = 0 where it equals 2/(sqrt(pi) R).
double softened_coulomb(double u, double softening);

// Shin-Metiu potential energy for electron at x and moving nucleus at X
// (both bohr). Pinned nuclei sit at +-L/2 relative to `frame_origin`.
// Throws EvaluationError when X hits a pinned nucleus.
double shinmetiu_potential(double x, double X, const ShinMetiuParams& params, double frame_origin = 0.0);

// -Z / sqrt(x^2 + 1)
double screened_hydrogen_potential(double x, const ScreenedHydrogenParams& params);

}  // namespace cavityed
