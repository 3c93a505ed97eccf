#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "groma/runner.hpp"

namespace groma::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIoError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitLabelFailed = 3;

struct CliOptions {
  RunConfig config;
  std::filesystem::path out_dir;
  bool quiet = false;
};

/// Either options to run with, or an exit code plus the text to print.
struct ParseOutcome {
  std::optional<CliOptions> options;
  int exit_code = kExitOk;
  std::string message;
};

/// Parses argv. `env_out_dir` stands in for GROMA_OUT_DIR.
ParseOutcome parse_args(const std::vector<std::string>& args, std::optional<std::string> env_out_dir = std::nullopt);

/// Exit code for a finished run: 0 when every label produced a pgcr, else 3.
int exit_code_for(const PGCRReport& report) noexcept;

}  // namespace groma::cli
