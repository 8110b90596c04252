#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace rmetric::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitCounterexample = 4;
inline constexpr int kExitUsage = 64;

struct CommandResult {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json payload;
  int exit_code = kExitOk;
  std::string output;       // what goes to stdout (or --out)
  std::string diagnostics;  // what goes to stderr
  std::string out_path;     // --out, empty for stdout
};

// argv without the program name. Never throws; failures become exit codes.
CommandResult run(const std::vector<std::string>& args);

// Runs and writes the result; returns the exit code.
int main_entry(int argc, char** argv);

}  // namespace rmetric::cli
