#pragma once

#include <optional>
#include <string>

#include "eitmono/config.hpp"

namespace eitmono {

/// Command-line overrides applied on top of a parsed config.
struct CliOverrides {
  std::optional<int> mesh_level;      // --mesh-level N
  std::optional<std::string> delta;   // --delta X|auto
  std::optional<std::string> beta;    // --beta X|max
  std::optional<std::string> out_dir; // --out DIR
  bool symmetrize = false;            // --symmetrize
  std::optional<int> threads;         // --threads N
};

/// Each command returns a process exit code (0 = success) or throws; the
/// binary turns exceptions into a single-line "error: ..." on stderr.
int cmd_mesh(const RunConfig& config, const CliOverrides& overrides);
int cmd_simulate(const RunConfig& config, const CliOverrides& overrides);
int cmd_test(const RunConfig& config, const CliOverrides& overrides);
int cmd_scan(const RunConfig& config, const CliOverrides& overrides);
int cmd_verify(const RunConfig& config, const CliOverrides& overrides);

}  // namespace eitmono
