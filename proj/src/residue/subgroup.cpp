#include "euclid/arith.hpp"
#include "euclid/residue.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace euclid::residue {

void require_odd_prime(std::uint64_t q, const char* what);

Subgroup::Subgroup(std::uint64_t modulus, std::vector<Residue> elements)
    : modulus_(modulus), member_(modulus, 0), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  for (Residue e : elements_) member_.at(e) = 1;
  if (elements_.empty() || (modulus_ - 1) % elements_.size() != 0) {
    throw std::invalid_argument("Subgroup: order must divide q-1");
  }
}

Subgroup power_subgroup(std::uint64_t q, std::uint64_t r) {
  require_odd_prime(q, "power_subgroup");
  if (r == 0 || (q - 1) % r != 0) {
    throw std::invalid_argument("power_subgroup: r=" + std::to_string(r) + " does not divide q-1");
  }
  // h^((q-1)/r) = 1 characterises the r-th powers
  const std::uint64_t e = (q - 1) / r;
  std::vector<Residue> elements;
  elements.reserve(e);
  for (Residue h = 1; h < q; ++h) {
    if (arith::pow_mod(h, e, q) == 1) elements.push_back(h);
  }
  return Subgroup(q, std::move(elements));
}

Subgroup subgroup_generated(std::span<const Residue> generators, std::uint64_t q) {
  require_odd_prime(q, "subgroup_generated");
  std::vector<std::uint8_t> seen(q, 0);
  std::vector<Residue> elements{1};
  seen[1] = 1;
  for (Residue g : generators) {
    g %= q;
    if (g == 0) throw std::invalid_argument("subgroup_generated: generator divisible by q");
    if (seen[g]) continue;
    // closure: keep multiplying the current group by g until nothing new
    for (std::size_t j = 0; j < elements.size(); ++j) {
      Residue next = arith::mul_mod(elements[j], g, q);
      if (!seen[next]) {
        seen[next] = 1;
        elements.push_back(next);
      }
    }
  }
  return Subgroup(q, std::move(elements));
}

bool is_union_of_cosets(const ResidueSet& s, const Subgroup& g) {
  if (s.modulus() != g.modulus()) throw std::invalid_argument("is_union_of_cosets: moduli differ");
  const std::uint64_t q = s.modulus();
  for (Residue x : s.insertion_order()) {
    for (Residue h : g.elements()) {
      if (!s.contains(arith::mul_mod(x, h, q))) return false;
    }
  }
  return true;
}

}  // namespace euclid::residue
