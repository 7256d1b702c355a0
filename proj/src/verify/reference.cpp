#include "euclid/arith.hpp"
#include "euclid/verify.hpp"

#include <algorithm>

namespace euclid::verify::reference {
namespace {

int legendre(std::uint64_t v, std::uint64_t q) { return arith::jacobi(static_cast<std::int64_t>(v % q), q); }

}  // namespace

std::int64_t character_sum_elliptic(std::uint64_t q, std::uint64_t a) {
  std::int64_t sum = 0;
  for (std::uint64_t x = 1; x < q; ++x) {
    std::uint64_t v = arith::mul_mod(x, (arith::mul_mod(x, x, q) + a) % q, q);
    sum += legendre(v, q);
  }
  return sum;
}

std::int64_t character_sum_genus2(std::uint64_t q, std::uint64_t a) {
  std::int64_t sum = 0;
  for (std::uint64_t x = 1; x < q; ++x) sum += legendre(arith::pow_mod(x, 6, q) + a, q);
  return sum;
}

bool hyp_i_holds(std::uint64_t q, std::uint64_t a) {
  for (std::uint64_t x = 1; x < q; ++x) {
    std::uint64_t v = (x + arith::mul_mod(a, arith::inv_mod(x, q), q)) % q;
    if (legendre(v, q) != 1) return true;
  }
  return false;
}

bool hyp_ii_holds(std::uint64_t q, std::uint64_t a) {
  for (std::uint64_t x = 1; x < q; ++x) {
    if (legendre(arith::pow_mod(x, 6, q) + a, q) != 1) return true;
  }
  return false;
}

HypRow hyp_row(std::uint64_t q) {
  HypRow row;
  row.q = q;
  for (std::uint64_t a = 1; a < q; ++a) {
    row.elliptic.push_back(static_cast<std::int32_t>(character_sum_elliptic(q, a)));
    if (q >= 5) row.genus2.push_back(static_cast<std::int32_t>(character_sum_genus2(q, a)));
    row.symbol_a.push_back(static_cast<std::int8_t>(legendre(a, q)));
    if (!hyp_i_holds(q, a)) row.hyp_i_exceptions.push_back(a);
    if (!hyp_ii_holds(q, a)) row.hyp_ii_failures.push_back(a);
  }
  return row;
}

std::vector<std::uint64_t> smooth_squarefree_residues(std::uint64_t q) {
  auto primes = arith::primes_up_to(q - 1);
  std::vector<bool> hit(q, false);
  const std::uint64_t subsets = std::uint64_t{1} << primes.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::uint64_t d = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (mask >> i & 1) d = d * primes[i] % q;
    }
    hit[d] = true;
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 1; c < q; ++c) {
    if (hit[c]) out.push_back(c);
  }
  return out;
}

std::uint64_t squarefree_count(std::uint64_t x) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    bool squarefree = true;
    for (std::uint64_t d = 2; d * d <= n && squarefree; ++d) squarefree = n % (d * d) != 0;
    count += squarefree;
  }
  return count;
}

}  // namespace euclid::verify::reference
