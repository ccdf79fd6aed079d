#pragma once

#include <stdexcept>
#include <string>

namespace tomo {

// Malformed or inconsistent input: bad state descriptions, dimension mismatches,
// unnormalized weights. The CLI maps these to exit code 2.
class InvalidInput : public std::invalid_argument {
public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A numeric guard tripped: grid coverage, aliasing, insufficient sampling.
// The CLI maps these to exit code 3.
class NumericGuard : public std::runtime_error {
public:
  explicit NumericGuard(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tomo
