#pragma once

#include <stdexcept>
#include <string>

namespace codesign {

/// Points or vectors whose arity does not match the order they are compared under.
class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Robot design that violates a physical constraint (mass budget, type mismatch).
class InfeasibleDesign : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed catalog, scenario, graph or request.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An internal iteration guard tripped (fixed-point cap, planner cap).
class IterationLimit : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace codesign
