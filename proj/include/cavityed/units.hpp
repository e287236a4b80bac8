#pragma once

#include <string>
#include <string_view>

namespace cavityed {

// Atomic units throughout; these are the only conversions at the boundary.
inline constexpr double kBohrPerAngstrom = 1.8897261246;
inline constexpr double kEvPerHartree = 27.211386;
inline constexpr double kPi = 3.14159265358979323846;

enum class LengthUnit { Bohr, Angstrom };

std::string_view to_string(LengthUnit unit);
LengthUnit parse_length_unit(std::string_view text);  // throws ParameterError

// A length as the user wrote it. Keeps the original unit so configs
// serialize back to exactly what was parsed.
struct Length {
  double value = 0.0;
  LengthUnit unit = LengthUnit::Bohr;

  static Length bohr(double v) { return {v, LengthUnit::Bohr}; }
  static Length angstrom(double v) { return {v, LengthUnit::Angstrom}; }

  double in_bohr() const { return unit == LengthUnit::Bohr ? value : value * kBohrPerAngstrom; }
  double in_angstrom() const { return unit == LengthUnit::Angstrom ? value : value / kBohrPerAngstrom; }

  bool operator==(const Length&) const = default;
};

inline double hartree_to_ev(double e) { return e * kEvPerHartree; }

}  // namespace cavityed
