#include "euclid/arith.hpp"
#include "euclid/residue.hpp"
#include "euclid/verify.hpp"

#include <omp.h>

namespace euclid::verify {

int thread_count(Execution exec) {
  return exec.jobs == 0 ? omp_get_max_threads() : static_cast<int>(exec.jobs);
}

std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t bound) {
  auto primes = arith::primes_up_to(bound);
  if (!primes.empty() && primes.front() == 2) primes.erase(primes.begin());
  return primes;
}

SqReport verify_lemma_sq(std::uint64_t q_max, Execution exec) {
  const auto qs = odd_primes_up_to(q_max);
  const auto all_primes = arith::primes_up_to(q_max);
  SqReport report;
  report.rows.resize(qs.size());

#pragma omp parallel for schedule(dynamic) num_threads(thread_count(exec))
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const std::uint64_t q = qs[i];
    // primes below q are a prefix of all_primes
    std::size_t below = 0;
    while (below < all_primes.size() && all_primes[below] < q) ++below;
    auto s = residue::subset_product_classes(std::span(all_primes.data(), below), q);
    report.rows[i] = {q, s.size(), 2 * s.size() > q - 1, s.full()};
  }

  for (const auto& row : report.rows) {
    if (!row.half_ok) report.pass = false;
    if (!row.full) report.non_full.push_back(row.q);
  }
  return report;
}

DensityReport verify_squarefree_density(std::uint64_t x_max) {
  DensityReport report;
  report.x_max = x_max;
  std::vector<std::uint8_t> squareful(x_max + 1, 0);
  for (std::uint64_t d = 2; d * d <= x_max; ++d) {
    for (std::uint64_t m = d * d; m <= x_max; m += d * d) squareful[m] = 1;
  }
  std::uint64_t count = 0;
  bool first = true;
  for (std::uint64_t x = 1; x <= x_max; ++x) {
    if (!squareful[x]) ++count;
    // count >= 53x/88  <=>  88 count - 53 x >= 0
    std::int64_t slack = static_cast<std::int64_t>(88 * count) - static_cast<std::int64_t>(53 * x);
    if (slack < 0 && !report.first_failure) {
      report.first_failure = x;
      report.pass = false;
    }
    if (first || slack < report.tightest_slack) {
      report.tightest_slack = slack;
      report.tightest_x = x;
      first = false;
    }
  }
  report.count_at_max = count;
  return report;
}

}  // namespace euclid::verify
