#pragma once

#include <stdexcept>
#include <string>

namespace gifstile {

struct Tolerances {
  double structural = 1e-9;  // scale/ortho consistency, transform equality
  double geometric = 1e-6;   // comparing tile placements after long chains
  double ortho_check = 1e-9;
};

inline constexpr Tolerances kTol{};

// Raised when an operation's own result breaks a guarantee it is supposed to
// give (e.g. a congruence map that is not an isometry).
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace gifstile
