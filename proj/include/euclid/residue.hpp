#pragma once

// Subsets and subgroups of the unit group (Z/qZ)^x for an odd prime q that
// fits a machine word.

#include "euclid/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace euclid::residue {

using Residue = std::uint64_t;
/// Bit i set means index i of the prime list is in the subset.
using SubsetMask = std::uint64_t;

/// Largest prime list a representative-tracking DP accepts.
inline constexpr std::size_t kMaxSubsetPrimes = 64;

std::vector<std::size_t> mask_indices(SubsetMask mask);
SubsetMask indices_mask(std::span<const std::size_t> indices);

/// Membership table over the classes 1..q-1, optionally carrying one subset
/// of a prime list per attained class whose product reduces to that class.
class ResidueSet {
 public:
  explicit ResidueSet(std::uint64_t modulus, bool with_representatives = false);

  std::uint64_t modulus() const { return modulus_; }
  std::size_t size() const { return members_.size(); }
  bool full() const { return members_.size() + 1 == modulus_; }
  bool contains(Residue c) const { return c != 0 && c < modulus_ && member_[c] != 0; }

  /// Attained classes in the order they were inserted.
  const std::vector<Residue>& insertion_order() const { return members_; }
  /// Attained classes ascending.
  std::vector<Residue> members() const;

  bool has_representatives() const { return !representative_.empty(); }
  std::optional<SubsetMask> representative(Residue c) const;

  /// Returns false when c was already present (the existing representative
  /// is kept).
  bool insert(Residue c, SubsetMask representative = 0);

  friend bool operator==(const ResidueSet& a, const ResidueSet& b) {
    return a.modulus_ == b.modulus_ && a.member_ == b.member_;
  }

 private:
  std::uint64_t modulus_;
  std::vector<std::uint8_t> member_;
  std::vector<Residue> members_;
  std::vector<SubsetMask> representative_;
};

/// Subgroup of (Z/qZ)^x as a membership table.
class Subgroup {
 public:
  Subgroup(std::uint64_t modulus, std::vector<Residue> elements);

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t order() const { return elements_.size(); }
  std::uint64_t index() const { return (modulus_ - 1) / elements_.size(); }
  bool contains(Residue c) const { return c != 0 && c < modulus_ && member_[c] != 0; }
  /// Ascending.
  const std::vector<Residue>& elements() const { return elements_; }

 private:
  std::uint64_t modulus_;
  std::vector<std::uint8_t> member_;
  std::vector<Residue> elements_;
};

/// Classes attained by squarefree positive integers all of whose prime
/// factors are below q. Throws std::invalid_argument unless q is an odd prime.
ResidueSet smooth_squarefree_residues(std::uint64_t q);

/// Classes of subset products of the given residues, without representatives
/// (no limit on the number of factors). Stops early once the table is full.
ResidueSet subset_product_classes(std::span<const Residue> factors, std::uint64_t q);

/// Classes of every divisor of prod(primes) modulo q, each with its canonical
/// representative subset. Primes are processed in ascending order of value;
/// a class keeps the first subset that reaches it. O(k * q).
ResidueSet divisor_residues(std::span<const BigInt> primes, std::uint64_t q);

/// Canonical subset (indices into primes, ascending) whose product is
/// congruent to target, or nullopt when the class is not attained.
std::optional<std::vector<std::size_t>> find_subset_with_residue(std::span<const BigInt> primes,
                                                                 std::uint64_t q, Residue target);

/// The r-th powers of (Z/qZ)^x; requires r | q-1.
Subgroup power_subgroup(std::uint64_t q, std::uint64_t r);

/// Multiplicative closure of the generators (and 1).
Subgroup subgroup_generated(std::span<const Residue> generators, std::uint64_t q);

/// True iff s*G is contained in S for every s in S.
bool is_union_of_cosets(const ResidueSet& s, const Subgroup& g);

/// c * S, the image of S under multiplication by c (no representatives).
ResidueSet scaled(const ResidueSet& s, Residue c);

/// True iff c * S is contained in S.
bool is_stable_under(const ResidueSet& s, Residue c);

}  // namespace euclid::residue
