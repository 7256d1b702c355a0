#pragma once

// Integer primitives: modular arithmetic on machine words, quadratic
// symbols, modular square roots, primality and budgeted factorization.

#include "euclid/bigint.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace euclid::arith {

// --- word-sized modular arithmetic -----------------------------------------

constexpr std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

constexpr std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1 (throws std::domain_error
/// otherwise).
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

// --- quadratic symbols -------------------------------------------------------

/// Jacobi symbol (a/m) for odd m >= 1. Throws std::invalid_argument when m is
/// even or nonpositive.
int jacobi(const BigInt& a, const BigInt& m);
int jacobi(std::int64_t a, std::uint64_t m);

/// Square root of a modulo the odd prime q (Tonelli-Shanks). Returns the
/// smaller of the two roots, 0 for a = 0, or nullopt when a is a non-residue.
/// Throws std::invalid_argument when q is not an odd prime or a >= q.
std::optional<std::uint64_t> mod_sqrt(std::uint64_t a, std::uint64_t q);

// --- primality ---------------------------------------------------------------

/// Strong-pseudoprime test to the first twelve prime bases followed by a
/// strong Lucas test with Selfridge parameters. Exact below 3.3e24 from the
/// base set alone; above that it is a Baillie-PSW test, for which no
/// counterexample is known.
bool is_prime(const BigInt& n);
bool is_prime(std::uint64_t n);

/// All primes <= bound, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

// --- factorization -----------------------------------------------------------

/// Work limits for factorize. Iteration counts only, so results are identical
/// on every platform.
struct Budget {
  std::uint64_t trial_division_bound = 100'000;
  std::uint64_t rho_iteration_cap = 100'000'000;
  std::uint64_t prng_seed = 0x45756c6964ULL;

  friend bool operator==(const Budget&, const Budget&) = default;
};

enum class FactorStatus { Complete, CompositeCofactor, BudgetExhausted };

const char* to_string(FactorStatus status);

struct PrimePower {
  BigInt prime;
  unsigned multiplicity = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// input = prod(prime^multiplicity) * cofactor. The cofactor is 1 exactly
/// when status is Complete; otherwise it is the product of the composite
/// parts left unsplit. CompositeCofactor means no rho work was allowed,
/// BudgetExhausted that the rho cap ran out.
struct FactorizationResult {
  BigInt input;
  std::vector<PrimePower> factors;  // ascending by prime
  BigInt cofactor{1};
  FactorStatus status = FactorStatus::Complete;
  std::uint64_t rho_iterations = 0;

  bool complete() const { return status == FactorStatus::Complete; }
  /// Distinct primes, ascending.
  std::vector<BigInt> primes() const;
  friend bool operator==(const FactorizationResult&, const FactorizationResult&) = default;
};

/// Trial division to budget.trial_division_bound, then Brent's variant of
/// Pollard rho on what remains, up to budget.rho_iteration_cap iterations in
/// total. Requires n >= 2 (throws std::invalid_argument otherwise).
FactorizationResult factorize(const BigInt& n, const Budget& budget);

/// Result of a minimality-certified search for the least prime factor.
struct SmallestFactor {
  std::optional<BigInt> prime;   // nullopt when minimality cannot be certified
  FactorizationResult evidence;  // whatever factorization work was done
};

/// The least prime factor of n, certified either because trial division
/// found it or because the factorization completed. Never guesses.
SmallestFactor smallest_prime_factor_with_evidence(const BigInt& n, const Budget& budget);

inline std::optional<BigInt> smallest_prime_factor(const BigInt& n, const Budget& budget) {
  return smallest_prime_factor_with_evidence(n, budget).prime;
}

/// Builds a Complete result from a list of primes whose product is n (used
/// for memoized factorizations). Caller guarantees the list is valid.
FactorizationResult result_from_primes(const BigInt& n, std::span<const BigInt> primes);

}  // namespace euclid::arith
