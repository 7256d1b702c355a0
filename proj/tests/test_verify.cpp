#include "euclid/arith.hpp"
#include "euclid/residue.hpp"
#include "euclid/verify.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace euclid;
using namespace euclid::verify;

namespace {

using Pairs = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

std::vector<std::uint64_t> odd_primes(std::uint64_t bound) {
  auto p = arith::primes_up_to(bound);
  p.erase(p.begin());
  return p;
}

}  // namespace

TEST_CASE("integer comparisons against k sqrt(q)") {
  CHECK(at_most_k_sqrt(4, 2, 4));
  CHECK_FALSE(at_most_k_sqrt(5, 2, 4));
  CHECK(at_most_k_sqrt(-100, 2, 4));
  CHECK(within_hasse(6, 9));
  CHECK(within_hasse(-6, 9));
  CHECK_FALSE(within_hasse(7, 9));
  // 4 sqrt(19) = 17.43..: sum + 1 + (a/q) must stay below it
  CHECK(within_weil_upper(-18, 1, 19));
  CHECK(within_weil_two_sided(-18, 1, 19));
  CHECK_FALSE(within_weil_symmetric(-18, 1, 19));
  CHECK_FALSE(within_weil_upper(16, 1, 19));
  CHECK(within_weil_upper(15, 1, 19));
}

TEST_CASE("character sum examples") {
  CHECK(character_sum_elliptic(5, 1) == -2);
  CHECK(character_sum_elliptic(7, 3) == 0);
  CHECK(character_sum_elliptic(11, 2) == 0);
  CHECK(character_sum_elliptic(13, 5) == -4);
  CHECK(character_sum_elliptic(101, 7) == -20);
  CHECK(character_sum_genus2(7, 1) == 6);
  CHECK(character_sum_genus2(13, 2) == 12);
  CHECK(character_sum_genus2(19, 1) == -18);
  CHECK(character_sum_genus2(31, 4) == 6);
  CHECK(character_sum_genus2(101, 7) == 0);
  CHECK(character_sum_elliptic(7, 10) == character_sum_elliptic(7, 3));
  CHECK_THROWS_AS(character_sum_elliptic(9, 1), std::invalid_argument);
  CHECK_THROWS_AS(character_sum_elliptic(7, 14), std::invalid_argument);
  CHECK_THROWS_AS(character_sum_genus2(3, 1), std::invalid_argument);
}

TEST_CASE("character sums match brute-force point counts") {
  for (std::uint64_t q : odd_primes(100)) {
    std::vector<std::uint64_t> roots(q, 0);  // number of y with y^2 = v
    for (std::uint64_t y = 0; y < q; ++y) ++roots[y * y % q];
    for (std::uint64_t a = 1; a < q; ++a) {
      // affine points of y^2 = x(x^2 + a); x = 0 contributes one point
      std::int64_t points = 0;
      for (std::uint64_t x = 0; x < q; ++x) points += roots[x * ((x * x + a) % q) % q];
      CHECK(points == static_cast<std::int64_t>(q) + character_sum_elliptic(q, a));
      if (q < 5) continue;
      // y^2 = x^6 + a; x = 0 contributes 1 + (a/q)
      points = 0;
      for (std::uint64_t x = 0; x < q; ++x) {
        std::uint64_t x6 = arith::pow_mod(x, 6, q);
        points += roots[(x6 + a) % q];
      }
      std::int64_t chi_a = roots[a] > 0 ? 1 : -1;
      CHECK(points == static_cast<std::int64_t>(q) + character_sum_genus2(q, a) + chi_a);
    }
  }
}

TEST_CASE("table kernel agrees with the reference") {
  for (std::uint64_t q : odd_primes(300)) {
    HypRow fast = hyp_row(q), slow = reference::hyp_row(q);
    REQUIRE(fast.elliptic == slow.elliptic);
    REQUIRE(fast.genus2 == slow.genus2);
    REQUIRE(fast.symbol_a == slow.symbol_a);
    REQUIRE(fast.hyp_i_exceptions == slow.hyp_i_exceptions);
    REQUIRE(fast.hyp_ii_failures == slow.hyp_ii_failures);
    for (std::uint64_t a : {1ul, 2ul, q - 1}) {
      CHECK(fast.elliptic[a - 1] == character_sum_elliptic(q, a));
      if (q >= 5) CHECK(fast.genus2[a - 1] == character_sum_genus2(q, a));
    }
  }
}

TEST_CASE("lemma hyp sweep to 200") {
  auto r = verify_lemma_hyp(200);
  CHECK(r.pass());
  CHECK(r.hasse_pass);
  CHECK(r.weil_upper_pass);
  CHECK(r.weil_two_sided_pass);
  CHECK(r.hyp_i_exceptions == Pairs{{5, 3}});
  CHECK(r.hyp_ii_failures == Pairs{{7, 1}, {7, 3}, {13, 2}, {13, 11}});
  // the symmetric reading |sum| <= 4 sqrt(q) - 1 - (a/q) does not hold
  CHECK_FALSE(r.weil_symmetric_pass);
  REQUIRE(r.first_weil_symmetric_violation.has_value());
  CHECK(*r.first_weil_symmetric_violation == std::pair<std::uint64_t, std::uint64_t>{19, 1});

  CHECK(r.direct_pass);
  std::set<std::pair<std::string, std::uint64_t>> direct;
  for (const auto& d : r.direct) direct.emplace(d.check, d.q);
  CHECK(direct.count({"hyp_i_direct", 3}) == 1);
  CHECK(direct.count({"hyp_i_direct", 5}) == 1);
  for (std::uint64_t q : {3u, 5u, 11u, 17u}) CHECK(direct.count({"hyp_ii_direct", q}) == 1);
  CHECK(direct.count({"sq_two_thirds", 7}) == 1);
  CHECK(direct.count({"sq_two_thirds", 13}) == 1);
  CHECK(direct.count({"sixth_power_identity", 7}) == 1);
}

TEST_CASE("sweeps are identical serially and in parallel") {
  auto a = verify_lemma_hyp(600, {1});
  auto b = verify_lemma_hyp(600, {0});
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].elliptic == b.rows[i].elliptic);
    CHECK(a.rows[i].genus2 == b.rows[i].genus2);
  }
  CHECK(a.weil_symmetric_violations == b.weil_symmetric_violations);
  auto s1 = verify_lemma_sq(3000, {1});
  auto s2 = verify_lemma_sq(3000, {3});
  CHECK(s1.non_full == s2.non_full);
  CHECK(s1.rows.size() == s2.rows.size());
}

TEST_CASE("lemma sq") {
  auto r = verify_lemma_sq(2000);
  CHECK(r.pass);
  CHECK(r.non_full == std::vector<std::uint64_t>{5, 7});
  CHECK(r.rows.front().q == 3);
  CHECK(r.rows[2].size == 5);  // q = 7
  for (std::uint64_t q : odd_primes(60)) {
    CHECK(residue::smooth_squarefree_residues(q).members() == reference::smooth_squarefree_residues(q));
  }
}

TEST_CASE("squarefree density") {
  CHECK(reference::squarefree_count(100) == 61);
  CHECK(reference::squarefree_count(176) == 106);
  auto r = verify_squarefree_density(1000000);
  CHECK(r.pass);
  CHECK_FALSE(r.first_failure.has_value());
  CHECK(r.count_at_max == 607926);
  // equality 88 * 106 = 53 * 176
  CHECK(r.tightest_x == 176);
  CHECK(r.tightest_slack == 0);
  auto small = verify_squarefree_density(5000);
  CHECK(small.count_at_max == reference::squarefree_count(5000));
}

TEST_CASE("report records") {
  auto hyp = verify_lemma_hyp(50);
  auto records = report_records(hyp);
  auto has = [&](const std::string& check, std::uint64_t q) {
    return std::any_of(records.begin(), records.end(),
                       [&](const CheckRecord& r) { return r.check == check && r.q == q; });
  };
  CHECK(has("hasse", 3));
  CHECK(has("weil_upper", 7));
  CHECK(has("weil_symmetric", 19));
  CHECK(has("hyp_ii_exception", 13));
  CHECK(has("hyp_i_exception", 5));
  for (const auto& r : records) {
    if (r.asserted) CHECK_MESSAGE(r.pass, r.check, " q=", r.q);
    if (r.check == "weil_symmetric" && r.q == 19) CHECK_FALSE(r.pass);
  }
  auto cells = report_records(hyp, true);
  std::size_t hasse_cells = std::count_if(cells.begin(), cells.end(),
                                          [](const CheckRecord& r) { return r.check == "hasse_cell"; });
  std::size_t expected = 0;
  for (auto q : odd_primes(50)) expected += q - 1;
  CHECK(hasse_cells == expected);

  auto sq = report_records(verify_lemma_sq(100));
  std::size_t full_records = std::count_if(sq.begin(), sq.end(), [](const CheckRecord& r) { return r.check == "sq_full"; });
  CHECK(full_records == 2);
  auto dens = report_records(verify_squarefree_density(200));
  REQUIRE(dens.size() == 2);
  CHECK(dens[1].x == 176u);
  CHECK(dens[1].value == 106);
}
