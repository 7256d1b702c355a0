#include "euclid/residue.hpp"
#include "euclid/sequences.hpp"

#include <stdexcept>

namespace euclid::sequences {

std::vector<SequenceRecord> generate_pomerance_records(std::size_t count) {
  if (count == 0) throw std::invalid_argument("generate_pomerance: count must be positive");
  if (count > kPomeranceMaxTerms) {
    throw std::invalid_argument("generate_pomerance: at most " + std::to_string(kPomeranceMaxTerms) +
                                " terms");
  }
  // evidence only needs to exhibit the (small) term, so skip rho work
  const arith::Budget trial_only{.trial_division_bound = 100'000, .rho_iteration_cap = 0};

  std::vector<SequenceRecord> out;
  PrimeSeed seed;
  for (std::size_t k = 1; k <= count; ++k) {
    SequenceRecord record;
    record.index = k;
    for (std::uint64_t p = 2;; ++p) {
      if (!arith::is_prime(p) || seed.contains(from_u64(p))) continue;
      record.prime = from_u64(p);
      if (p == 2) {
        // d = 1 always gives d + 1 = 2
        record.witness_divisor = 1;
        break;
      }
      // p | d + 1 iff d = -1 (mod p); the divisor classes come from the DP
      auto subset = residue::find_subset_with_residue(seed.primes(), p, p - 1);
      if (subset) {
        record.witness_divisor = subset_product(seed, *subset);
        break;
      }
    }
    record.step_value = record.witness_divisor + 1;
    record.evidence = arith::factorize(record.step_value, trial_only);
    seed.append(record.prime);
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<BigInt> generate_pomerance(std::size_t count) {
  std::vector<BigInt> out;
  for (auto& r : generate_pomerance_records(count)) out.push_back(std::move(r.prime));
  return out;
}

}  // namespace euclid::sequences
