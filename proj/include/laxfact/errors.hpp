#pragma once

#include <stdexcept>
#include <string>

namespace laxfact {

// Caller bug: an operation was invoked outside its precondition.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what)
      : std::logic_error("contract violation: " + what) {}
};

// A size cap (morphism count, universe size, hom-set enumeration) was hit.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what)
      : std::runtime_error("resource limit: " + what) {}
};

// Malformed input file. Carries a 1-based line number when known (0 otherwise).
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace laxfact
