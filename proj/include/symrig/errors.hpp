#pragma once

#include <stdexcept>
#include <string>

namespace symrig {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A group spec or count spec with out-of-range parameters.
class invalid_spec : public error {
public:
  using error::error;
};

/// A gain graph, framework or move argument violating an invariant.
class invalid_argument : public error {
public:
  using error::error;
};

/// A (surface, group) pair or count outside the supported tables.
class unsupported : public error {
public:
  using error::error;
};

/// The exact oracle would exceed its configured enumeration budget.
class scale_limit : public error {
public:
  using error::error;
};

/// Malformed input file or JSON payload.
class parse_error : public error {
public:
  using error::error;
};

} // namespace symrig
