#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dmw {

// Largest lattice any builder will produce. WORKBENCH_SIZE_CAP overrides
// the default of 256 when set to a positive integer.
std::size_t size_cap();

// Largest number of variables an exhaustive validity check will enumerate.
inline constexpr int kDefaultVariableCap = 7;

// Largest generator count accepted by free_de_morgan.
inline constexpr int kFreeGeneratorCap = 2;

class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

void check_size(std::size_t n, const std::string& what);

}  // namespace dmw
