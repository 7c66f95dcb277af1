#pragma once

// Command dispatch: each command writes its CSV/JSON artifacts and returns an exit code.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclorec/config.hpp"

namespace cyclorec {

enum class Command { Terms, Factor, Growth, Spart, Scan, Bounds, Solve };

std::optional<Command> parse_command(std::string_view name);
std::string to_string(Command c);
const std::vector<std::string>& command_names();

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 usage, 2 structure, 3 budget
  std::vector<std::filesystem::path> artifacts;
  std::string message;
};

/// Never throws for module errors; they become exit codes with a message.
RunResult run(Command cmd, const JobConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace cyclorec
