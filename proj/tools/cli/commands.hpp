#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ninls::cli {

enum ExitCode { kOk = 0, kUnexpected = 1, kConfigError = 2, kNumericalFailure = 3 };

const std::vector<std::pair<std::string, std::string>>& commands();

struct Invocation {
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

// Loads the config, runs the command, writes artifacts and the manifest.
int run(const Invocation& inv, std::ostream& log, std::ostream& err);

}  // namespace ninls::cli
