#pragma once

#include <array>
#include <charconv>
#include <string>

namespace beatlab::fmt {

// Shortest round-trip decimal form, independent of the C locale.
inline std::string num(double x) {
  std::array<char, 32> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), p);
}

}  // namespace beatlab::fmt
