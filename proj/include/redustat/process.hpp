#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace redustat {

struct ProcessResult {
  int exit_code = -1;  // valid when !signaled && !timed_out
  bool signaled = false;
  int signal = 0;
  bool timed_out = false;
  std::string output;  // stdout and stderr interleaved
  std::chrono::milliseconds duration{0};
};

/// Runs `command` through /bin/sh in `workdir` with the current environment
/// plus `extra_env`. The whole process group is killed when `timeout` expires.
/// Throws SpawnFailure if the shell cannot be started (including a missing
/// workdir).
ProcessResult run_shell(const std::string& command, const std::filesystem::path& workdir,
                        std::chrono::milliseconds timeout,
                        const std::vector<std::pair<std::string, std::string>>& extra_env = {});

/// Single-quotes `arg` for /bin/sh.
std::string shell_quote(const std::string& arg);

}  // namespace redustat
