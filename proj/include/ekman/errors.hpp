#pragma once
#include <stdexcept>
#include <string>

namespace ekman {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// lambda_phi and friends are undefined where the depth vanishes
struct ShoreSingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ekman
