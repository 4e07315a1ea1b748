#include "dmw/config.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace dmw {

namespace {

std::size_t read_cap() {
  const char* raw = std::getenv("WORKBENCH_SIZE_CAP");
  if (raw == nullptr) return 256;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(raw, raw + std::strlen(raw), value);
  if (ec != std::errc{} || value == 0 || value > 65535) return 256;
  return value;
}

}  // namespace

std::size_t size_cap() {
  static const std::size_t cap = read_cap();
  return cap;
}

void check_size(std::size_t n, const std::string& what) {
  if (n > size_cap()) {
    throw SizeLimitError(what + ": " + std::to_string(n) + " elements exceeds the size cap of " +
                         std::to_string(size_cap()));
  }
}

}  // namespace dmw
