#include "euclid/factor_service.hpp"

namespace euclid::arith {

std::optional<FactorizationResult> FactorService::from_memo(const BigInt& n) const {
  if (memo_ == nullptr) return std::nullopt;
  auto primes = memo_->lookup(n);
  if (!primes) return std::nullopt;
  memo_hits_.fetch_add(1, std::memory_order_relaxed);
  return result_from_primes(n, *primes);
}

void FactorService::account(const FactorizationResult& result) const {
  rho_iterations_.fetch_add(result.rho_iterations, std::memory_order_relaxed);
  if (memo_ == nullptr || !result.complete()) return;
  std::vector<BigInt> primes;
  for (const auto& f : result.factors) {
    for (unsigned i = 0; i < f.multiplicity; ++i) primes.push_back(f.prime);
  }
  memo_->remember(result.input, primes);
}

FactorizationResult FactorService::factorize(const BigInt& n) const {
  calls_.fetch_add(1, std::memory_order_relaxed);
  if (auto hit = from_memo(n)) return *std::move(hit);
  auto result = arith::factorize(n, budget_);
  account(result);
  return result;
}

SmallestFactor FactorService::smallest_prime_factor(const BigInt& n) const {
  calls_.fetch_add(1, std::memory_order_relaxed);
  if (auto hit = from_memo(n)) {
    BigInt least = hit->factors.front().prime;
    return {std::move(least), *std::move(hit)};
  }
  auto found = arith::smallest_prime_factor_with_evidence(n, budget_);
  account(found.evidence);
  return found;
}

FactorStats FactorService::stats() const {
  return {calls_.load(), memo_hits_.load(), rho_iterations_.load()};
}

}  // namespace euclid::arith
