#pragma once

#include <stdexcept>
#include <string>

namespace lineext {

// Raised for malformed input or violated preconditions on domain objects.
// The CLI maps it to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lineext
