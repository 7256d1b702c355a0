#include "euclid/residue.hpp"

#include "euclid/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace euclid::residue {

void require_odd_prime(std::uint64_t q, const char* what) {
  if (q < 3 || !arith::is_prime(q)) {
    throw std::invalid_argument(std::string(what) + ": modulus must be an odd prime, got " +
                                std::to_string(q));
  }
}

std::vector<std::size_t> mask_indices(SubsetMask mask) {
  std::vector<std::size_t> out;
  while (mask != 0) {
    out.push_back(static_cast<std::size_t>(__builtin_ctzll(mask)));
    mask &= mask - 1;
  }
  return out;
}

SubsetMask indices_mask(std::span<const std::size_t> indices) {
  SubsetMask mask = 0;
  for (auto i : indices) {
    if (i >= kMaxSubsetPrimes) throw std::out_of_range("subset index beyond mask width");
    mask |= SubsetMask{1} << i;
  }
  return mask;
}

ResidueSet::ResidueSet(std::uint64_t modulus, bool with_representatives)
    : modulus_(modulus), member_(modulus, 0) {
  if (with_representatives) representative_.assign(modulus, 0);
}

std::vector<Residue> ResidueSet::members() const {
  std::vector<Residue> out = members_;
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<SubsetMask> ResidueSet::representative(Residue c) const {
  if (!has_representatives() || !contains(c)) return std::nullopt;
  return representative_[c];
}

bool ResidueSet::insert(Residue c, SubsetMask representative) {
  if (c == 0 || c >= modulus_) throw std::out_of_range("residue class outside 1..q-1");
  if (member_[c]) return false;
  member_[c] = 1;
  members_.push_back(c);
  if (has_representatives()) representative_[c] = representative;
  return true;
}

ResidueSet subset_product_classes(std::span<const Residue> factors, std::uint64_t q) {
  ResidueSet out(q);
  out.insert(1);
  for (Residue f : factors) {
    if (out.full()) break;
    f %= q;
    if (f == 0) throw std::invalid_argument("subset_product_classes: factor divisible by q");
    const std::size_t before = out.size();
    for (std::size_t j = 0; j < before; ++j) {
      out.insert(arith::mul_mod(out.insertion_order()[j], f, q));
    }
  }
  return out;
}

ResidueSet smooth_squarefree_residues(std::uint64_t q) {
  require_odd_prime(q, "smooth_squarefree_residues");
  auto primes = arith::primes_up_to(q - 1);
  return subset_product_classes(primes, q);
}

ResidueSet divisor_residues(std::span<const BigInt> primes, std::uint64_t q) {
  require_odd_prime(q, "divisor_residues");
  if (primes.size() > kMaxSubsetPrimes) {
    throw std::invalid_argument("divisor_residues: at most 64 primes supported");
  }
  std::vector<Residue> classes(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    classes[i] = mod_u64(primes[i], q);
    if (classes[i] == 0) {
      throw std::invalid_argument("divisor_residues: prime " + to_decimal(primes[i]) +
                                  " is divisible by the modulus");
    }
  }
  std::vector<std::size_t> order(primes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return primes[a] < primes[b]; });

  ResidueSet out(q, true);
  out.insert(1, 0);
  for (std::size_t i : order) {
    const std::size_t before = out.size();
    const SubsetMask bit = SubsetMask{1} << i;
    for (std::size_t j = 0; j < before; ++j) {
      Residue c = out.insertion_order()[j];
      out.insert(arith::mul_mod(c, classes[i], q), *out.representative(c) | bit);
    }
  }
  return out;
}

std::optional<std::vector<std::size_t>> find_subset_with_residue(std::span<const BigInt> primes,
                                                                 std::uint64_t q, Residue target) {
  if (target == 0 || target >= q) {
    throw std::invalid_argument("find_subset_with_residue: target must lie in 1..q-1");
  }
  auto classes = divisor_residues(primes, q);
  auto rep = classes.representative(target);
  if (!rep) return std::nullopt;
  return mask_indices(*rep);
}

ResidueSet scaled(const ResidueSet& s, Residue c) {
  ResidueSet out(s.modulus());
  for (Residue x : s.insertion_order()) out.insert(arith::mul_mod(x, c, s.modulus()));
  return out;
}

bool is_stable_under(const ResidueSet& s, Residue c) {
  c %= s.modulus();
  if (c == 0) return false;
  return std::all_of(s.insertion_order().begin(), s.insertion_order().end(),
                     [&](Residue x) { return s.contains(arith::mul_mod(x, c, s.modulus())); });
}

}  // namespace euclid::residue
