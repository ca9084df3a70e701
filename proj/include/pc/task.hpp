#pragma once
// JSON task files for the command line front end.
//
// A task is {"version": 1, "kind": K, ...payload}. Kinds: pseudochar-check,
// gma-analyze, nilpotent, refine. Rationals are written as strings "a/b" (plain
// integers are accepted too) and ring elements as expressions in the
// algebra's variables. Reports are JSON objects whose keys serialize sorted.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace pc::task {

inline constexpr int kVersion = 1;

struct RunOptions {
  std::uint64_t seed = 0;
  std::size_t tuple_budget = 1000000;
};

// Schema diagnostics as "<json pointer>: <message>"; empty for a well-formed task.
std::vector<std::string> validate(const nlohmann::json& task);

// Runs a validated task. Failures surface as the exceptions of pc/errors.hpp.
nlohmann::json run(const nlohmann::json& task, const RunOptions& opt);

// Report for a failed run.
nlohmann::json error_report(const std::string& kind, const std::string& message, const std::string& witness = {});

// One "path = value" line per leaf.
std::string to_text(const nlohmann::json& report);

}  // namespace pc::task
