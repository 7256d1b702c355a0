#include "euclid/bigint.hpp"

#include <stdexcept>

namespace euclid {

BigInt parse_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a nonnegative decimal integer: '" + std::string(text) + "'");
    }
  }
  return BigInt(std::string(text), 10);
}

std::uint64_t to_u64(const BigInt& value) {
  static_assert(sizeof(unsigned long) == 8, "mpz_get_ui must be 64-bit");
  return mpz_get_ui(value.get_mpz_t());
}

BigInt from_u64(std::uint64_t value) {
  BigInt out;
  mpz_set_ui(out.get_mpz_t(), value);
  return out;
}

}  // namespace euclid
