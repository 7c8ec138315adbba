#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dualint {

// Caller violated a documented precondition (bad index, wrong LSpec variant, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The system {x : Mx <= b} is empty where a nonempty one was required.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The weight has no optimal primal-dual pair.
class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured enumeration cap would be exceeded. Results are refused, never truncated.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(std::string limit, std::size_t cap, const std::string& what)
      : std::runtime_error("resource limit '" + limit + "' (" + std::to_string(cap) +
                           ") exceeded: " + what),
        limit_(std::move(limit)),
        cap_(cap) {}

  const std::string& limit() const { return limit_; }
  std::size_t cap() const { return cap_; }

 private:
  std::string limit_;
  std::size_t cap_;
};

// The empty clutter or the clutter {{}} reached a polyhedral operation.
class DegenerateClutterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Clutter input with one member contained in another.
class ClutterInvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A built-in consistency check failed; indicates a bug, never a property of the input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dualint
