#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace euclid {

using BigInt = mpz_class;

/// Parses a nonnegative decimal integer; throws std::invalid_argument on
/// anything else (signs, whitespace, empty input).
BigInt parse_decimal(std::string_view text);

inline std::string to_decimal(const BigInt& value) { return value.get_str(10); }

inline bool fits_u64(const BigInt& value) {
  return sgn(value) >= 0 && mpz_sizeinbase(value.get_mpz_t(), 2) <= 64;
}

/// Caller guarantees fits_u64(value).
std::uint64_t to_u64(const BigInt& value);
BigInt from_u64(std::uint64_t value);

/// value mod m for m >= 1, result in [0, m).
inline std::uint64_t mod_u64(const BigInt& value, std::uint64_t m) {
  return mpz_fdiv_ui(value.get_mpz_t(), m);
}

}  // namespace euclid
