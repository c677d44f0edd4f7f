#ifndef GDET_NUMERIC_HPP
#define GDET_NUMERIC_HPP

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace gdet {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Default modulus for fingerprints: the Mersenne prime 2^61 - 1.
inline constexpr std::uint64_t kFingerprintPrime = 2305843009213693951ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

__extension__ typedef unsigned __int128 gdet_uint128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<gdet_uint128>(a) * b) % m);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  a += b;
  if (a >= m || a < b) a -= m;
  return a;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp,
                            std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// a^(m-2) mod m for prime m.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  return powmod(a, m - 2, m);
}

inline std::uint64_t bigint_mod(const BigInt& v, std::uint64_t m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

// Value of variable `var` at seeded evaluation point `point_index`.
// Always nonzero mod the prime.
inline std::uint64_t fingerprint_point_value(std::uint64_t seed,
                                             int point_index, int var,
                                             std::uint64_t prime) {
  std::uint64_t h =
      splitmix64(seed + 0x9E3779B97F4A7C15ULL *
                            static_cast<std::uint64_t>(point_index + 1));
  h = splitmix64(h ^ static_cast<std::uint64_t>(var + 1));
  return 1 + h % (prime - 1);
}

}  // namespace gdet

#endif  // GDET_NUMERIC_HPP
