#pragma once

#include <stdexcept>
#include <string>

namespace scatter {

// Precondition violated by the caller (bad parameter, invalid configuration).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical routine failed to reach its target accuracy.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
[[noreturn]] inline void fail_domain(const std::string& where, const std::string& what) {
  throw DomainError(where + ": " + what);
}
}  // namespace detail

}  // namespace scatter
