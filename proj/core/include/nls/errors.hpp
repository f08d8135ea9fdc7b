#pragma once

#include <stdexcept>
#include <string>

namespace nls {

// Potential fails the semibounded-below-by-a-quadratic test, so the
// Hamiltonian need not generate a unique unitary flow.
struct GuardRejected : std::runtime_error {
  explicit GuardRejected(const std::string& what) : std::runtime_error(what) {}
};

// Requested point lies outside the range swept by the ray bundle.
struct OutOfRange : std::runtime_error {
  explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

// Newton/bisection inversion failed to reach tolerance.
struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Resolving an experiment request would exceed the configured grid budget.
struct GridBudgetExceeded : std::runtime_error {
  explicit GridBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Configuration file error, anchored to a line.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& file, int line, const std::string& msg)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + msg),
        file(file), line(line) {}
  std::string file;
  int line;
};

}  // namespace nls
