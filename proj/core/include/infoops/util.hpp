#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace infoops {

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

constexpr std::uint64_t fnv1a(std::string_view data, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : data) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

constexpr std::uint64_t fnv1a_mix(std::uint64_t v, std::uint64_t h = kFnvOffset) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
  return h;
}

// Orders all-digit identifiers numerically, everything else lexicographically,
// so "3" < "5" < "12" but "u3" < "u5" stays string order.
inline bool natural_less(std::string_view a, std::string_view b) {
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (unsigned char c : s)
      if (!std::isdigit(c)) return false;
    return true;
  };
  if (all_digits(a) && all_digits(b)) {
    auto strip_zeros = [](std::string_view s) {
      std::size_t p = s.find_first_not_of('0');
      return p == std::string_view::npos ? std::string_view{} : s.substr(p);
    };
    std::string_view ta = strip_zeros(a);
    std::string_view tb = strip_zeros(b);
    if (ta.size() != tb.size()) return ta.size() < tb.size();
    if (ta != tb) return ta < tb;
    return a < b;
  }
  return a < b;
}

// Fixed-point decimal formatting; relies on IEEE round-half-to-even.
inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace infoops
