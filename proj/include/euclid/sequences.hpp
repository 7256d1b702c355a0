#pragma once

#include "euclid/arith.hpp"
#include "euclid/factor_service.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace euclid::sequences {

/// Ordered list of distinct primes together with their product.
class PrimeSeed {
 public:
  PrimeSeed() = default;
  /// Throws std::invalid_argument on a non-prime or repeated entry.
  explicit PrimeSeed(std::vector<BigInt> primes);

  const std::vector<BigInt>& primes() const { return primes_; }
  const BigInt& product() const { return product_; }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }
  bool contains(const BigInt& p) const;

  /// Appends a new prime; throws if it is already present or not prime.
  void append(const BigInt& p);

  /// Smallest prime not in the seed.
  std::uint64_t smallest_missing_prime() const;

  friend bool operator==(const PrimeSeed& a, const PrimeSeed& b) { return a.primes_ == b.primes_; }

 private:
  std::vector<BigInt> primes_;
  BigInt product_{1};
};

/// N_I = prod_{i in I} p_i + prod_{i not in I} p_i. Indices are 0-based and
/// may be given in any order; duplicates or out-of-range indices throw
/// std::out_of_range.
BigInt euclid_step(const PrimeSeed& seed, std::span<const std::size_t> subset);

/// Product of the seed primes at the given indices.
BigInt subset_product(const PrimeSeed& seed, std::span<const std::size_t> subset);

enum class EuclidMode { Min, Max };

struct SequenceRecord {
  std::size_t index = 0;               // 1-based position in the sequence
  BigInt prime;
  BigInt witness_divisor{1};           // d with prime | step value
  BigInt step_value;                   // d + n/d (Euclid-Mullin: 1 + n)
  std::optional<int> obstruction_symbol;  // Chua only, (-n/p) with n before this term
  arith::FactorizationResult evidence;
};

struct Truncation {
  std::string reason;
  BigInt blocking;  // the value whose factorization could not be certified
};

struct SequenceRun {
  std::vector<SequenceRecord> records;
  std::optional<Truncation> truncated;

  std::vector<BigInt> primes() const;
  bool complete() const { return !truncated.has_value(); }
};

/// Euclid-Mullin (Min) or second Euclid-Mullin (Max) from the empty seed.
SequenceRun generate_euclid_mullin(std::size_t count, EuclidMode mode,
                                   const arith::FactorService& factors);

/// Largest seed size for which Chua's divisor scan is attempted.
inline constexpr std::size_t kChuaMaxTerms = 20;

/// Chua's sequence: each term is the least prime dividing d + n/d for some
/// divisor d of the running product n.
SequenceRun generate_chua(std::size_t count, const arith::FactorService& factors);

struct ObstructionStep {
  std::size_t index = 0;
  BigInt prime;
  std::optional<int> symbol;               // nullopt for the vacuous first step
  std::optional<BigInt> least_admissible;  // least prime not in seed with (-n/p) = 1
  bool smallest_admissible = true;         // reported, not asserted
};

struct ObstructionReport {
  bool invariant_holds = true;  // (-n/p_{k+1}) = 1 at every nonvacuous step
  std::vector<ObstructionStep> steps;
};

/// Checks the quadratic obstruction along a Chua prefix and reports whether
/// each term is the least prime meeting it. Throws std::invalid_argument when
/// the records are not a consistent Chua-style prefix.
ObstructionReport chua_obstruction_check(std::span<const SequenceRecord> records);

inline constexpr std::size_t kPomeranceMaxTerms = 25;

/// Pomerance's variant with witness divisors (d with p | d + 1).
std::vector<SequenceRecord> generate_pomerance_records(std::size_t count);
std::vector<BigInt> generate_pomerance(std::size_t count);

}  // namespace euclid::sequences
