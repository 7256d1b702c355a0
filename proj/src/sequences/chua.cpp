#include "euclid/sequences.hpp"

#include <algorithm>
#include <stdexcept>

namespace euclid::sequences {
namespace {

// Divisors d of n with d <= n/d, ascending. The partner n/d gives the same
// value d + n/d, so only this half is scanned.
std::vector<BigInt> lower_divisors(const PrimeSeed& seed) {
  std::vector<BigInt> all{BigInt(1)};
  for (const auto& p : seed.primes()) {
    const std::size_t before = all.size();
    for (std::size_t i = 0; i < before; ++i) all.push_back(all[i] * p);
  }
  std::vector<BigInt> lower;
  for (auto& d : all) {
    if (d * d <= seed.product()) lower.push_back(std::move(d));
  }
  std::sort(lower.begin(), lower.end());
  return lower;
}

// Least prime p <= limit dividing v, if any.
std::optional<std::uint64_t> small_factor(const BigInt& v, std::span<const std::uint64_t> primes,
                                          std::uint64_t limit) {
  for (std::uint64_t p : primes) {
    if (p > limit) break;
    if (mpz_cmp_ui(v.get_mpz_t(), p * p) < 0) {
      // no factor up to sqrt(v): v is prime
      if (fits_u64(v) && to_u64(v) <= limit) return to_u64(v);
      return std::nullopt;
    }
    if (mpz_divisible_ui_p(v.get_mpz_t(), p)) return p;
  }
  return std::nullopt;
}

}  // namespace

SequenceRun generate_chua(std::size_t count, const arith::FactorService& factors) {
  if (count == 0) throw std::invalid_argument("generate_chua: count must be positive");
  if (count > kChuaMaxTerms) {
    throw std::invalid_argument("generate_chua: at most " + std::to_string(kChuaMaxTerms) + " terms");
  }
  const std::uint64_t bound = factors.budget().trial_division_bound;
  const auto primes = arith::primes_up_to(bound);

  SequenceRun run;
  PrimeSeed seed;
  for (std::size_t k = 1; k <= count; ++k) {
    const BigInt& n = seed.product();
    const auto divisors = lower_divisors(seed);

    // Trial-division frontier: once a factor p is known, later values only
    // need checking below p.
    std::optional<std::uint64_t> best;
    std::size_t witness = 0;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      BigInt v = divisors[i] + n / divisors[i];
      auto p = small_factor(v, primes, best ? *best - 1 : bound);
      if (p && (!best || *p < *best)) {
        best = p;
        witness = i;
      }
    }

    SequenceRecord record;
    record.index = k;
    if (best) {
      record.prime = from_u64(*best);
      record.witness_divisor = divisors[witness];
      record.step_value = divisors[witness] + n / divisors[witness];
      record.evidence = factors.smallest_prime_factor(record.step_value).evidence;
    } else {
      // every value is free of factors <= bound: fall back to full certification
      std::optional<arith::SmallestFactor> least;
      for (const auto& d : divisors) {
        BigInt v = d + n / d;
        auto found = factors.smallest_prime_factor(v);
        if (!found.prime) {
          run.truncated = Truncation{"smallest prime factor of d + n/d not certified within budget",
                                     found.evidence.cofactor};
          return run;
        }
        if (!least || *found.prime < *least->prime) {
          least = std::move(found);
          record.witness_divisor = d;
          record.step_value = v;
        }
      }
      record.prime = *least->prime;
      record.evidence = std::move(least->evidence);
    }
    if (record.prime != 2) record.obstruction_symbol = arith::jacobi(BigInt(-n), record.prime);
    seed.append(record.prime);
    run.records.push_back(std::move(record));
  }
  return run;
}

ObstructionReport chua_obstruction_check(std::span<const SequenceRecord> records) {
  ObstructionReport report;
  PrimeSeed seed;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const BigInt& n = seed.product();
    const std::string where = "record " + std::to_string(i + 1) + ": ";
    if (r.index != i + 1) throw std::invalid_argument(where + "index out of sequence");
    if (!arith::is_prime(r.prime)) throw std::invalid_argument(where + "term is not prime");
    if (seed.contains(r.prime)) throw std::invalid_argument(where + "term repeats an earlier term");
    if (r.witness_divisor < 1 || !mpz_divisible_p(n.get_mpz_t(), r.witness_divisor.get_mpz_t())) {
      throw std::invalid_argument(where + "witness does not divide the running product");
    }
    if (r.step_value != r.witness_divisor + n / r.witness_divisor ||
        !mpz_divisible_p(r.step_value.get_mpz_t(), r.prime.get_mpz_t())) {
      throw std::invalid_argument(where + "term does not divide d + n/d");
    }

    ObstructionStep step;
    step.index = r.index;
    step.prime = r.prime;
    if (r.prime != 2) {
      BigInt minus_n = -n;
      step.symbol = arith::jacobi(minus_n, r.prime);
      if (*step.symbol != 1) report.invariant_holds = false;
      for (BigInt p = 3; p <= r.prime; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
        if (!seed.contains(p) && arith::jacobi(minus_n, p) == 1) {
          step.least_admissible = p;
          break;
        }
      }
      step.smallest_admissible = step.least_admissible == r.prime;
    }
    report.steps.push_back(std::move(step));
    seed.append(r.prime);
  }
  return report;
}

}  // namespace euclid::sequences
