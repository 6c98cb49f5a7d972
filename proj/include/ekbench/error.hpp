#pragma once

#include <stdexcept>
#include <string>

namespace ekbench {

// Failure categories surfaced by library operations.  The CLI maps these
// onto exit codes: operation-level failures (insufficient_fatness,
// no_fat_node) exit 1, bad arguments or broken preconditions
// (bad_input, length_mismatch, base_not_parallel, node_absent,
// dim_too_large, overlapping_ifs) exit 2, and exhausted budgets
// (resolution_exhausted, budget_exceeded, grid_exhausted,
// depth_exhausted, oracle_stall, schedule_empty) exit 3.
enum class errc {
  length_mismatch,
  insufficient_fatness,
  base_not_parallel,
  node_absent,
  depth_exhausted,
  oracle_stall,
  schedule_empty,
  no_fat_node,
  dim_too_large,
  overlapping_ifs,
  resolution_exhausted,
  budget_exceeded,
  grid_exhausted,
  bad_input,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        detail_(std::move(message)) {}

  errc code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  errc code_;
  std::string detail_;
};

}  // namespace ekbench
