#pragma once

#include <cstdint>
#include <string>

#include "tcv/json_io.hpp"

namespace tcv {

inline constexpr const char* kSchemaId = "tritangent-cv/1";

// One parsed CLI invocation; run() is pure (no global state, no I/O), so the
// full command surface is testable in-process.
struct Invocation {
  std::string subcommand;
  Json input = Json::object();
  std::uint64_t seed = 0;
  double tol = 1e-9;  // mapped to Tolerance::eps_residual; eps_equal stays 1e-7
  bool pretty = false;
};

struct RunResult {
  int exit_code = 0;        // 0 ok, 1 malformed input, 2 domain error
  std::string output;       // canonical JSON document, newline-terminated
};

RunResult run(const Invocation& inv);

// All subcommand names, for help/dispatch.
const std::vector<std::string>& subcommand_names();

}  // namespace tcv
