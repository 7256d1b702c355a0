#include "euclid/arith.hpp"
#include "euclid/verify.hpp"

#include <stdexcept>
#include <string>

namespace euclid::verify {
namespace {

void require_cell(std::uint64_t q, std::uint64_t a, std::uint64_t min_q, const char* what) {
  if (q < min_q || !arith::is_prime(q)) {
    throw std::invalid_argument(std::string(what) + ": q=" + std::to_string(q) +
                                " must be a prime >= " + std::to_string(min_q));
  }
  if (a % q == 0) throw std::invalid_argument(std::string(what) + ": a must be a unit mod q");
}

}  // namespace

std::vector<std::int8_t> legendre_table(std::uint64_t q) {
  std::vector<std::int8_t> table(q, -1);
  table[0] = 0;
  for (std::uint64_t x = 1; x <= q / 2; ++x) table[arith::mul_mod(x, x, q)] = 1;
  return table;
}

std::int64_t character_sum_elliptic(std::uint64_t q, std::uint64_t a) {
  require_cell(q, a, 3, "character_sum_elliptic");
  const auto chi = legendre_table(q);
  a %= q;
  std::int64_t sum = 0;
  for (std::uint64_t x = 1; x < q; ++x) sum += chi[arith::mul_mod(x, (arith::mul_mod(x, x, q) + a) % q, q)];
  return sum;
}

std::int64_t character_sum_genus2(std::uint64_t q, std::uint64_t a) {
  require_cell(q, a, 5, "character_sum_genus2");
  const auto chi = legendre_table(q);
  a %= q;
  std::int64_t sum = 0;
  for (std::uint64_t x = 1; x < q; ++x) sum += chi[(arith::pow_mod(x, 6, q) + a) % q];
  return sum;
}

}  // namespace euclid::verify
