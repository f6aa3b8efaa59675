#pragma once

#include <stdexcept>
#include <string>

namespace qho {

// Raised when a requested computation cannot be represented faithfully on
// the truncated basis (squeeze too strong, thermal tail too heavy, leakage
// into the top levels).
class truncation_error : public std::runtime_error {
 public:
  explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an integrator fails its accuracy contract (norm drift,
// Bogoliubov invariant, step-halving convergence).
class accuracy_error : public std::runtime_error {
 public:
  explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qho
