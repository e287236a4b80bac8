#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cavityed/experiments.hpp"

namespace cavityed {

inline constexpr int kConfigGrammarVersion = 1;

enum class ExperimentKind { Spectrum, BoxSweep, GaugeCompare, TranslationTest, FindResonance };
std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

struct RunConfig {
  ExperimentKind experiment = ExperimentKind::Spectrum;
  std::string name;  // free-form label, copied to the manifest

  ModelTemplate model;
  LanczosOptions solver;

  // box_sweep
  std::vector<Length> boxes;
  Toggle toggle = Toggle::SelfPolarization;
  std::vector<bool> toggle_values{true, false};
  // translation_test; self-polarization values come from toggle_values
  std::vector<double> shifts_bohr{0.5, 1.0, 2.0};

  // Which coupling keys the text carried; serialization writes the same ones.
  bool lambda_given = false;
  bool g_over_omega_given = true;

  std::string csv_path = "results.csv";
  std::string manifest_path = "manifest.json";

  // Cross-key checks and a trial instantiate of the model.
  // Throws ConfigurationError or ParameterError.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

// One resolved key = value pair, in canonical section order.
struct ConfigEntry {
  std::string section;
  std::string key;
  std::string value;
};

// Flat `[section]` headers, `key = value` lines, `#` comments. Errors carry
// the 1-based line number (ConfigParseError).
RunConfig parse_config(std::string_view text);

// Every key relevant to the config, defaults included. Reals are written
// in shortest round-trip form so parse_config(serialize_config(c)) == c.
std::vector<ConfigEntry> resolved_entries(const RunConfig& config);
std::string serialize_config(const RunConfig& config);

}  // namespace cavityed
