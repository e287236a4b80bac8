#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cavityed/config.hpp"

namespace cavityed {

enum ExitCode : int { kExitOk = 0, kExitPartial = 2, kExitConfig = 3, kExitRuntime = 4 };

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr int kManifestSchemaVersion = 1;

struct RunOutput {
  std::string csv;          // deterministic for a given config
  nlohmann::json manifest;  // carries wall times, so not byte-stable
  int exit_code = kExitOk;
};

// Runs the experiment in memory. Solver and model exceptions propagate.
RunOutput execute(const RunConfig& config, std::ostream* progress = nullptr);

// execute() plus atomic file output. Relative output paths resolve against
// out_dir. Returns the exit code; errors are reported on `log`.
int run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

// Writes to a sibling temp file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Thread count from CAVITYED_THREADS; 0 when unset. Throws
// ConfigurationError on a malformed value.
int threads_from_env();
int active_threads();

}  // namespace cavityed
