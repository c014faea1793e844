#pragma once

#include <stdexcept>
#include <string>

namespace crys {

/// A construction would exceed a configured size cap.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string &what) : std::runtime_error("budget exceeded: " + what) {}
};

/// An iterative stabilization did not settle within its configured bound.
struct BoundExceeded : std::runtime_error {
  explicit BoundExceeded(const std::string &what) : std::runtime_error("bound exceeded: " + what) {}
};

/// Input outside what can be verified by finite computation.
struct OutOfScope : std::runtime_error {
  explicit OutOfScope(const std::string &what) : std::runtime_error("out of desk-verifiable scope: " + what) {}
};

} // namespace crys
