#include "euclid/sequences.hpp"

#include <stdexcept>

namespace euclid::sequences {

SequenceRun generate_euclid_mullin(std::size_t count, EuclidMode mode,
                                   const arith::FactorService& factors) {
  if (count == 0) throw std::invalid_argument("generate_euclid_mullin: count must be positive");
  SequenceRun run;
  PrimeSeed seed;
  for (std::size_t k = 1; k <= count; ++k) {
    BigInt step = seed.product() + 1;
    SequenceRecord record;
    record.index = k;
    record.step_value = step;
    if (mode == EuclidMode::Min) {
      auto least = factors.smallest_prime_factor(step);
      if (!least.prime) {
        run.truncated = Truncation{"smallest prime factor not certified within budget",
                                   least.evidence.cofactor};
        break;
      }
      record.prime = *least.prime;
      record.evidence = std::move(least.evidence);
    } else {
      auto full = factors.factorize(step);
      if (!full.complete()) {
        run.truncated = Truncation{"largest prime factor needs a complete factorization", full.cofactor};
        break;
      }
      record.prime = full.factors.back().prime;
      record.evidence = std::move(full);
    }
    seed.append(record.prime);
    run.records.push_back(std::move(record));
  }
  return run;
}

}  // namespace euclid::sequences
