#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hodeg/error.hpp"
#include "hodeg/integer.hpp"

namespace hodeg {

// prod(d - w_i) / prod(w_i) for a weighted homogeneous germ.
inline std::int64_t milnor_number(std::int64_t d, const std::vector<std::int64_t>& weights) {
  if (weights.empty()) throw input_error("milnor_number: no weights");
  if (d <= 0) throw input_error("milnor_number: degree must be positive");
  Integer num = 1, den = 1;
  for (auto w : weights) {
    if (w <= 0 || w > d) throw input_error("milnor_number: weights must satisfy 0 < w <= d");
    num *= d - w;
    den *= w;
  }
  if (num % den != 0) throw input_error("milnor_number: " + num.get_str() + "/" + den.get_str() + " is not an integer");
  return to_int64(num / den);
}

}  // namespace hodeg
