#include "hatlab/numeric.hpp"

namespace hatlab {

BigInt big_pow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp) {
    if (exp & 1) result *= b;
    exp >>= 1;
    if (exp) b *= b;
  }
  return result;
}

BigInt one_plus_sum_i_pow_i(unsigned d) {
  BigInt total = 1;
  for (unsigned i = 1; i <= d; ++i) total += big_pow(i, i);
  return total;
}

}  // namespace hatlab
