#include "euclid/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace euclid::arith {

const char* to_string(FactorStatus status) {
  switch (status) {
    case FactorStatus::Complete: return "complete";
    case FactorStatus::CompositeCofactor: return "composite-cofactor";
    case FactorStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

std::vector<BigInt> FactorizationResult::primes() const {
  std::vector<BigInt> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

namespace {

constexpr std::uint64_t kCachedSieveLimit = 1u << 20;
constexpr std::uint64_t kBrentBatch = 128;

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> table = primes_up_to(kCachedSieveLimit);
  return table;
}

// Iteration allowance shared by every rho attempt within one factorize call.
struct RhoAllowance {
  std::uint64_t cap;
  std::uint64_t used = 0;
  bool spend() {
    if (used >= cap) return false;
    ++used;
    return true;
  }
};

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// Brent's cycle finding on f(y) = y^2 + c mod n. Returns a nontrivial divisor,
// 0 when this (y0, c) pair degenerates, or nullopt when the allowance runs out.
std::optional<std::uint64_t> brent_u64(std::uint64_t n, std::uint64_t y0, std::uint64_t c,
                                       RhoAllowance& allowance) {
  auto f = [n, c](std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(y) * y + c) % n);
  };
  std::uint64_t y = y0, x = y0, ys = y0, acc = 1, g = 1;
  for (std::uint64_t r = 1; g == 1; r <<= 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) {
      if (!allowance.spend()) return std::nullopt;
      y = f(y);
    }
    for (std::uint64_t k = 0; k < r && g == 1; k += kBrentBatch) {
      ys = y;
      std::uint64_t steps = std::min(kBrentBatch, r - k);
      for (std::uint64_t i = 0; i < steps; ++i) {
        if (!allowance.spend()) return std::nullopt;
        y = f(y);
        acc = mul_mod(acc, x > y ? x - y : y - x, n);
      }
      g = gcd_u64(acc, n);
    }
  }
  if (g == n) {
    do {
      if (!allowance.spend()) return std::nullopt;
      ys = f(ys);
      g = gcd_u64(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  if (g == n) return 0;
  return g;
}

std::optional<BigInt> brent_mpz(const BigInt& n, const BigInt& y0, const BigInt& c,
                                RhoAllowance& allowance) {
  mpz_srcptr nn = n.get_mpz_t();
  BigInt y = y0, x = y0, ys = y0, acc = 1, g = 1, diff;
  auto f = [&](BigInt& v) {
    mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
    mpz_add(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    mpz_tdiv_r(v.get_mpz_t(), v.get_mpz_t(), nn);
  };
  for (std::uint64_t r = 1; g == 1; r <<= 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) {
      if (!allowance.spend()) return std::nullopt;
      f(y);
    }
    for (std::uint64_t k = 0; k < r && g == 1; k += kBrentBatch) {
      ys = y;
      std::uint64_t steps = std::min(kBrentBatch, r - k);
      for (std::uint64_t i = 0; i < steps; ++i) {
        if (!allowance.spend()) return std::nullopt;
        f(y);
        mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        mpz_mul(acc.get_mpz_t(), acc.get_mpz_t(), diff.get_mpz_t());
        mpz_tdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), nn);
      }
      mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), nn);
    }
  }
  if (g == n) {
    do {
      if (!allowance.spend()) return std::nullopt;
      f(ys);
      mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), nn);
    } while (g == 1);
  }
  if (g == n) return BigInt(0);
  return g;
}

// Accumulates prime factors; composite pieces are split on a LIFO stack.
class Factorizer {
 public:
  explicit Factorizer(const Budget& budget)
      : budget_(budget), rng_(budget.prng_seed), allowance_{budget.rho_iteration_cap} {}

  // Trial division by every prime <= bound; returns the unfactored remainder,
  // which is 1, a prime (already recorded), or a composite with no factor
  // <= bound.
  BigInt trial_stage(const BigInt& n) {
    BigInt m = n;
    std::vector<std::uint64_t> local;
    const std::vector<std::uint64_t>* table = &small_primes();
    if (budget_.trial_division_bound > kCachedSieveLimit) {
      local = primes_up_to(budget_.trial_division_bound);
      table = &local;
    }
    for (std::uint64_t p : *table) {
      if (p > budget_.trial_division_bound) break;
      if (mpz_cmp_ui(m.get_mpz_t(), p * p) < 0) break;
      if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        do {
          mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
          add(BigInt(p));
        } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
      }
    }
    if (m == 1) return m;
    if (is_prime(m)) {
      add(m);
      return BigInt(1);
    }
    return m;
  }

  // Splits a composite with Brent-rho until everything is prime or the
  // allowance runs out; returns the product of what could not be split.
  BigInt rho_stage(const BigInt& composite) {
    std::vector<BigInt> stack{composite};
    BigInt leftover = 1;
    while (!stack.empty()) {
      BigInt m = std::move(stack.back());
      stack.pop_back();
      if (m == 1) continue;
      if (is_prime(m)) {
        add(m);
        continue;
      }
      if (auto root = perfect_root(m)) {
        for (unsigned i = 0; i < root->second; ++i) stack.push_back(root->first);
        continue;
      }
      auto divisor = split(m);
      if (!divisor) {
        leftover *= m;
        for (auto& rest : stack) leftover *= rest;
        stack.clear();
        break;
      }
      stack.push_back(m / *divisor);
      stack.push_back(*divisor);
    }
    return leftover;
  }

  bool rho_allowed() const { return budget_.rho_iteration_cap > 0; }

  FactorizationResult finish(const BigInt& n, const BigInt& cofactor, FactorStatus incomplete) {
    FactorizationResult out;
    out.input = n;
    for (auto& [p, e] : found_) out.factors.push_back({p, e});
    out.cofactor = cofactor;
    out.status = cofactor == 1 ? FactorStatus::Complete : incomplete;
    out.rho_iterations = allowance_.used;
    return out;
  }

 private:
  void add(const BigInt& p) { ++found_[p]; }

  static std::optional<std::pair<BigInt, unsigned>> perfect_root(const BigInt& m) {
    if (!mpz_perfect_power_p(m.get_mpz_t())) return std::nullopt;
    auto bits = static_cast<unsigned>(mpz_sizeinbase(m.get_mpz_t(), 2));
    for (unsigned k = bits; k >= 2; --k) {
      BigInt r;
      if (mpz_root(r.get_mpz_t(), m.get_mpz_t(), k) != 0) return std::make_pair(r, k);
    }
    return std::nullopt;
  }

  std::optional<BigInt> split(const BigInt& m) {
    if (mpz_even_p(m.get_mpz_t())) return BigInt(2);
    for (;;) {
      if (fits_u64(m)) {
        std::uint64_t n = to_u64(m);
        std::uint64_t y0 = rng_() % (n - 1) + 1;
        std::uint64_t c = rng_() % (n - 1) + 1;
        auto d = brent_u64(n, y0, c, allowance_);
        if (!d) return std::nullopt;
        if (*d != 0) return from_u64(*d);
      } else {
        BigInt y0 = random_below(m), c = random_below(m);
        auto d = brent_mpz(m, y0, c, allowance_);
        if (!d) return std::nullopt;
        if (*d != 0) return d;
      }
    }
  }

  BigInt random_below(const BigInt& m) {
    BigInt r = 0;
    auto limbs = mpz_sizeinbase(m.get_mpz_t(), 2) / 64 + 1;
    for (std::size_t i = 0; i < limbs; ++i) {
      r <<= 64;
      r += from_u64(rng_());
    }
    BigInt m1 = m - 1;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m1.get_mpz_t());
    return r + 1;
  }

  Budget budget_;
  std::mt19937_64 rng_;
  RhoAllowance allowance_;
  std::map<BigInt, unsigned> found_;
};

void require_at_least_two(const BigInt& n) {
  if (n < 2) throw std::invalid_argument("factorize: input must be >= 2, got " + to_decimal(n));
}

}  // namespace

FactorizationResult factorize(const BigInt& n, const Budget& budget) {
  require_at_least_two(n);
  Factorizer work(budget);
  BigInt rest = work.trial_stage(n);
  if (rest == 1) return work.finish(n, rest, FactorStatus::Complete);
  if (!work.rho_allowed()) return work.finish(n, rest, FactorStatus::CompositeCofactor);
  return work.finish(n, work.rho_stage(rest), FactorStatus::BudgetExhausted);
}

SmallestFactor smallest_prime_factor_with_evidence(const BigInt& n, const Budget& budget) {
  require_at_least_two(n);
  Factorizer work(budget);
  BigInt rest = work.trial_stage(n);
  if (rest == 1) {
    auto evidence = work.finish(n, rest, FactorStatus::Complete);
    return {evidence.factors.front().prime, std::move(evidence)};
  }
  // rest has no prime factor <= bound, so anything trial division found is
  // below every factor of rest and is the certified minimum.
  auto partial = work.finish(n, rest, FactorStatus::CompositeCofactor);
  if (!partial.factors.empty()) return {partial.factors.front().prime, std::move(partial)};
  if (!work.rho_allowed()) return {std::nullopt, std::move(partial)};
  auto evidence = work.finish(n, work.rho_stage(rest), FactorStatus::BudgetExhausted);
  if (!evidence.complete()) return {std::nullopt, std::move(evidence)};
  return {evidence.factors.front().prime, std::move(evidence)};
}

FactorizationResult result_from_primes(const BigInt& n, std::span<const BigInt> primes) {
  std::map<BigInt, unsigned> counts;
  for (const auto& p : primes) ++counts[p];
  FactorizationResult out;
  out.input = n;
  for (auto& [p, e] : counts) out.factors.push_back({p, e});
  return out;
}

}  // namespace euclid::arith
