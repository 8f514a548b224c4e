#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cartilab/config.hpp"

namespace cartilab::cli {

/// Parses argv and dispatches to a subcommand. Returns the process exit
/// code: 0 on success, 1 on a toolkit error, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The reproduction walkthrough behind `reproduce-paper`. Fixture files are
/// taken from `cfg.paths` when set, else from `data_dir`.
std::vector<Check> reproduce(const config::ToolkitConfig& cfg,
                             const std::filesystem::path& data_dir);

}  // namespace cartilab::cli
