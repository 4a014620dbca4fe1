#pragma once

#include <cstdint>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace hatlab {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// Saturating arithmetic for budget bookkeeping.
constexpr std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

constexpr std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == kSaturated || r == 0) return r;
  }
  return r;
}

BigInt big_pow(const BigInt& base, std::uint64_t exp);
inline BigInt big_pow(std::uint64_t base, std::uint64_t exp) { return big_pow(BigInt(base), exp); }

/// 1 + sum_{i=1}^{d} i^i, the size of the smallest non-coverable set in N^d.
BigInt one_plus_sum_i_pow_i(unsigned d);

}  // namespace hatlab
