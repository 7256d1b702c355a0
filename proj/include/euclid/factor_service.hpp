#pragma once

#include "euclid/arith.hpp"

#include <atomic>
#include <optional>
#include <vector>

namespace euclid::arith {

/// Store of previously completed factorizations. Implementations must be
/// safe to call from several threads at once.
class FactorMemo {
 public:
  virtual ~FactorMemo() = default;
  /// Ascending primes with repetition whose product is n, if known.
  virtual std::optional<std::vector<BigInt>> lookup(const BigInt& n) const = 0;
  virtual void remember(const BigInt& n, const std::vector<BigInt>& primes) = 0;
};

struct FactorStats {
  std::uint64_t calls = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t rho_iterations = 0;
};

/// Budget plus optional memo: the single entry point through which the
/// sequence generators and the prover request factorizations.
class FactorService {
 public:
  explicit FactorService(Budget budget = {}, FactorMemo* memo = nullptr)
      : budget_(budget), memo_(memo) {}

  FactorService(const FactorService&) = delete;
  FactorService& operator=(const FactorService&) = delete;

  const Budget& budget() const { return budget_; }

  FactorizationResult factorize(const BigInt& n) const;
  SmallestFactor smallest_prime_factor(const BigInt& n) const;

  FactorStats stats() const;

 private:
  std::optional<FactorizationResult> from_memo(const BigInt& n) const;
  void account(const FactorizationResult& result) const;

  Budget budget_;
  FactorMemo* memo_;
  mutable std::atomic<std::uint64_t> calls_{0};
  mutable std::atomic<std::uint64_t> memo_hits_{0};
  mutable std::atomic<std::uint64_t> rho_iterations_{0};
};

}  // namespace euclid::arith
