#pragma once

#include <stdexcept>
#include <string>

namespace m2ch {

enum class ErrorCode {
  invalid_argument,   // malformed inputs (grids, sizes, parameters)
  domain_error,       // input outside the operation's admissible domain
  invalid_state,      // state violates a structural requirement
  invalid_measure,    // non-monotone cumulative / negative mass
  invalid_relabeling, // relabeling samples not strictly increasing
  monotonicity,       // characteristic positions decreasing beyond tolerance
  blowup,             // non-finite values produced by time stepping
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace m2ch
