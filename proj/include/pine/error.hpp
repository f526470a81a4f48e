#pragma once

#include <stdexcept>
#include <string>

namespace pine {

// Malformed bytes on the wire or in a file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No protocol parameters satisfy the requested constraints.
class InfeasibleParams : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pine
