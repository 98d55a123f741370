#pragma once

#include <stdexcept>
#include <string>

namespace conehydro {

/// Invalid argument outside a function's mathematical or physical domain.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// (l, alpha) pair that violates l = k p.
class SelectionRuleError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative solver failed to converge (bisection bracket, inverse iteration).
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Material file failed schema validation.
class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace conehydro
