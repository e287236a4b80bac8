#include "cavityed/grid1d.hpp"

#include <cmath>
#include <string>

#include "cavityed/error.hpp"

namespace cavityed {

std::string_view to_string(LengthUnit unit) { return unit == LengthUnit::Bohr ? "bohr" : "angstrom"; }

LengthUnit parse_length_unit(std::string_view text) {
  if (text == "bohr" || text == "a0") return LengthUnit::Bohr;
  if (text == "angstrom" || text == "A" || text == "Angstrom") return LengthUnit::Angstrom;
  throw ParameterError("unknown length unit '" + std::string(text) + "' (expected bohr or angstrom)");
}

Grid1D::Grid1D(std::size_t n_points, double spacing, double origin)
    : n_points_(n_points), spacing_(spacing), origin_(origin) {
  if (n_points_ < 3) throw ParameterError("Grid1D: need at least 3 points");
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_)) throw ParameterError("Grid1D: spacing must be positive");
  if (!std::isfinite(origin_)) throw ParameterError("Grid1D: origin must be finite");
}

std::vector<double> Grid1D::coordinates() const {
  std::vector<double> x(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) x[i] = coordinate(i);
  return x;
}

Grid1D make_grid(Length box_length, double spacing, double center) {
  const double box = box_length.in_bohr();
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw ParameterError("make_grid: spacing must be positive");
  if (!(box > 0.0) || !std::isfinite(box)) throw ParameterError("make_grid: box length must be positive");
  // two spacings already give the minimal three-point grid
  if (box < 2.0 * spacing) throw ParameterError("make_grid: box must hold at least two spacings");
  auto n = static_cast<std::size_t>(std::floor(box / spacing)) + 1;
  if (n % 2 == 0) --n;  // round down so the grid stays inside the box
  const double half = 0.5 * static_cast<double>(n - 1);
  // origin + half*spacing == center; integer multiples keep the center point exact.
  return Grid1D(n, spacing, center - half * spacing);
}

BandMatrix kinetic_operator(const Grid1D& grid, double mass) {
  if (!(mass > 0.0)) throw ParameterError("kinetic_operator: mass must be positive");
  const std::size_t n = grid.size();
  const double h2 = grid.spacing() * grid.spacing();
  const double diag = 1.0 / (mass * h2);
  const double off = -0.5 / (mass * h2);
  BandMatrix t(n);
  t.add_diagonal(-1, std::vector<double>(n - 1, off));
  t.add_diagonal(0, std::vector<double>(n, diag));
  t.add_diagonal(1, std::vector<double>(n - 1, off));
  return t;
}

BandMatrix momentum_operator(const Grid1D& grid) {
  const std::size_t n = grid.size();
  const double c = 1.0 / (2.0 * grid.spacing());
  // (p psi)_i = -i (psi_{i+1} - psi_{i-1}) / (2h)
  BandMatrix p(n);
  p.add_diagonal(1, std::vector<Complex>(n - 1, Complex(0.0, -c)));
  p.add_diagonal(-1, std::vector<Complex>(n - 1, Complex(0.0, c)));
  return p;
}

void ShinMetiuParams::validate() const {
  if (!(nuclear_mass > 0.0) || !(electron_mass > 0.0)) throw ParameterError("Shin-Metiu: masses must be positive");
  if (!(R_c > 0.0) || !(R_f > 0.0)) throw ParameterError("Shin-Metiu: softening lengths must be positive");
  if (!(L > 0.0)) throw ParameterError("Shin-Metiu: L must be positive");
}

void ScreenedHydrogenParams::validate() const {
  if (!(Z > 0.0)) throw ParameterError("screened hydrogen: Z must be positive");
}

double softened_coulomb(double u, double softening) {
  const double a = std::abs(u);
  const double s = a / softening;
  // Below this the series 2/(sqrt(pi) R) (1 - s^2/3) is exact to double precision.
  if (s < 1e-8) return 2.0 / (std::sqrt(kPi) * softening);
  return std::erf(s) / a;
}

double shinmetiu_potential(double x, double X, const ShinMetiuParams& p, double frame_origin) {
  const double xr = x - frame_origin;
  const double Xr = X - frame_origin;
  const double right = Xr - 0.5 * p.L;
  const double left = Xr + 0.5 * p.L;
  if (right == 0.0 || left == 0.0)
    throw EvaluationError("shinmetiu_potential: moving nucleus coincides with a pinned nucleus");
  const double nuclear = p.Z * p.Z_minus / std::abs(right) + p.Z * p.Z_plus / std::abs(left);
  const double electron_pinned =
      p.Z_minus * softened_coulomb(xr - 0.5 * p.L, p.R_c) + p.Z_plus * softened_coulomb(xr + 0.5 * p.L, p.R_c);
  const double electron_moving = p.Z * softened_coulomb(xr - Xr, p.R_f);
  return nuclear - electron_pinned - electron_moving;
}

double screened_hydrogen_potential(double x, const ScreenedHydrogenParams& params) {
  return -params.Z / std::sqrt(x * x + 1.0);
}

}  // namespace cavityed
