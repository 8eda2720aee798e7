#pragma once

#include <stdexcept>
#include <string>

namespace hodeg {

// Malformed input: bad syntax, unknown generator, inconsistent weights.
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// A documented precondition of an operation does not hold.
class precondition_error : public std::logic_error {
 public:
  explicit precondition_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace hodeg
