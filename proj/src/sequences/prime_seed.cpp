#include "euclid/sequences.hpp"

#include <algorithm>
#include <stdexcept>

namespace euclid::sequences {

PrimeSeed::PrimeSeed(std::vector<BigInt> primes) {
  for (auto& p : primes) append(p);
}

bool PrimeSeed::contains(const BigInt& p) const {
  return std::find(primes_.begin(), primes_.end(), p) != primes_.end();
}

void PrimeSeed::append(const BigInt& p) {
  if (!arith::is_prime(p)) throw std::invalid_argument("seed entry " + to_decimal(p) + " is not prime");
  if (contains(p)) throw std::invalid_argument("seed entry " + to_decimal(p) + " is repeated");
  primes_.push_back(p);
  product_ *= p;
}

std::uint64_t PrimeSeed::smallest_missing_prime() const {
  for (std::uint64_t q = 2;; ++q) {
    if (arith::is_prime(q) && !contains(from_u64(q))) return q;
  }
}

namespace {

std::vector<bool> checked_membership(const PrimeSeed& seed, std::span<const std::size_t> subset) {
  std::vector<bool> in(seed.size(), false);
  for (auto i : subset) {
    if (i >= seed.size()) {
      throw std::out_of_range("subset index " + std::to_string(i) + " outside a seed of size " +
                              std::to_string(seed.size()));
    }
    if (in[i]) throw std::out_of_range("subset index " + std::to_string(i) + " repeated");
    in[i] = true;
  }
  return in;
}

}  // namespace

BigInt subset_product(const PrimeSeed& seed, std::span<const std::size_t> subset) {
  checked_membership(seed, subset);
  BigInt d = 1;
  for (auto i : subset) d *= seed.primes()[i];
  return d;
}

BigInt euclid_step(const PrimeSeed& seed, std::span<const std::size_t> subset) {
  BigInt d = subset_product(seed, subset);
  BigInt rest;
  mpz_divexact(rest.get_mpz_t(), seed.product().get_mpz_t(), d.get_mpz_t());
  return d + rest;
}

std::vector<BigInt> SequenceRun::primes() const {
  std::vector<BigInt> out;
  for (const auto& r : records) out.push_back(r.prime);
  return out;
}

}  // namespace euclid::sequences
