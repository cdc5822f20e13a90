#pragma once

#include <stdexcept>
#include <string>

namespace mcf {

/// Iterative solver failed to reach the requested tolerance.
class SolveError : public std::runtime_error {
  public:
    SolveError(const std::string& what, double achieved_residual, int iterations)
        : std::runtime_error(what),
          achieved_residual(achieved_residual),
          iterations(iterations) {}

    double achieved_residual;
    int iterations;
};

/// File could not be read, parsed, or written.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mcf
