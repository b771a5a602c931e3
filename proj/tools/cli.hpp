#pragma once

#include <string>
#include <vector>

#include "mealy/json.hpp"

namespace mealy::cli {

enum class Status { ok, false_result, parse_error, budget_exhausted, usage_error, internal_error };

struct CommandResult {
  Status status = Status::ok;
  Json payload;
  std::string help;  // usage text for --help and usage errors
};

// Exit codes: 0 ok and false_result, 64 usage, 65 parse, 75 budget, 70 internal.
int exit_code(Status s);
std::string status_name(Status s);

// argv excludes the program name.
CommandResult run(const std::vector<std::string>& argv);

}  // namespace mealy::cli
