#pragma once

#include <string>
#include <vector>

namespace zp::cli {

enum class Status { Ok, Error };

struct CommandResult {
  Status status = Status::Ok;
  int exit_code = 0;            // 0 ok, 1 computation error, 2 usage error
  std::string code;             // machine-readable error code, empty on success
  std::string payload;          // JSON object or CSV body for stdout
  std::vector<std::string> diagnostics;  // for stderr
};

/// Runs one command line (args exclude the program name).
CommandResult dispatch(const std::vector<std::string>& args);

}  // namespace zp::cli
