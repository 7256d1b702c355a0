#include "euclid/prover.hpp"

#include <algorithm>

namespace euclid::prover {
namespace {

CertificateCheck fail(std::optional<std::size_t> step, std::string reason) {
  return {false, step, std::move(reason)};
}

}  // namespace

CertificateCheck verify_certificate(const Certificate& certificate) {
  std::vector<BigInt> current;
  for (const auto& p : certificate.seed.primes()) {
    if (!arith::is_prime(p)) return fail(std::nullopt, "seed entry " + to_decimal(p) + " is not prime");
    if (std::find(current.begin(), current.end(), p) != current.end()) {
      return fail(std::nullopt, "seed entry " + to_decimal(p) + " is repeated");
    }
    current.push_back(p);
  }
  const auto& steps = certificate.steps;
  if (steps.empty()) {
    if (std::find(current.begin(), current.end(), certificate.target) != current.end()) return {};
    return fail(std::nullopt, "no steps and target not in seed");
  }

  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    std::vector<bool> in(current.size(), false);
    for (std::size_t j = 0; j < step.subset.size(); ++j) {
      std::size_t idx = step.subset[j];
      if (idx >= current.size()) return fail(i, "subset index out of range");
      if (j > 0 && step.subset[j - 1] >= idx) return fail(i, "subset indices not strictly ascending");
      in[idx] = true;
    }
    BigInt inside = 1, outside = 1;
    for (std::size_t j = 0; j < current.size(); ++j) (in[j] ? inside : outside) *= current[j];
    if (inside + outside != step.step_value) return fail(i, "N_I does not match the seed");
    if (step.prime < 2 || !mpz_divisible_p(step.step_value.get_mpz_t(), step.prime.get_mpz_t())) {
      return fail(i, "p ∤ N_I");
    }
    if (!arith::is_prime(step.prime)) return fail(i, "p is not prime");
    if (std::find(current.begin(), current.end(), step.prime) != current.end()) {
      return fail(i, "p already in the sequence");
    }
    const bool last = i + 1 == steps.size();
    if ((step.role == StepRole::Target) != last) return fail(i, "only the final step may be the Target");
    if (last && step.prime != certificate.target) return fail(i, "final prime is not the target");
    current.push_back(step.prime);
  }
  return {};
}

CertificateCheck verify_chain(std::span<const Certificate> chain) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i > 0 && !(chain[i].seed == chain[i - 1].final_seed())) {
      return fail(std::nullopt, "certificate " + std::to_string(i) + " does not continue the previous seed");
    }
    auto check = verify_certificate(chain[i]);
    if (!check) {
      check.reason = "certificate " + std::to_string(i) + ": " + check.reason;
      return check;
    }
  }
  return {};
}

}  // namespace euclid::prover
