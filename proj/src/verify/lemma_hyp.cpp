#include "euclid/arith.hpp"
#include "euclid/residue.hpp"
#include "euclid/verify.hpp"

#include <cmath>

namespace euclid::verify {

int thread_count(Execution exec);
std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t bound);
std::vector<std::int8_t> legendre_table(std::uint64_t q);

HypRow hyp_row(std::uint64_t q) {
  const auto chi = legendre_table(q);
  std::vector<std::uint64_t> cube(q), inverse(q), sixth(q);
  inverse[1] = 1;
  for (std::uint64_t x = 1; x < q; ++x) {
    cube[x] = x * x % q * x % q;
    sixth[x] = cube[x] * cube[x] % q;
    if (x > 1) inverse[x] = (q - (q / x) * inverse[q % x] % q) % q;
  }

  HypRow row;
  row.q = q;
  row.elliptic.resize(q - 1);
  row.symbol_a.resize(q - 1);
  if (q >= 5) row.genus2.resize(q - 1);
  for (std::uint64_t a = 1; a < q; ++a) {
    row.symbol_a[a - 1] = chi[a];

    // x(x^2 + a) = x^3 + a x, with a x accumulated additively
    std::int32_t elliptic = 0;
    std::uint64_t ax = 0;
    for (std::uint64_t x = 1; x < q; ++x) {
      ax += a;
      if (ax >= q) ax -= q;
      std::uint64_t v = cube[x] + ax;
      if (v >= q) v -= q;
      elliptic += chi[v];
    }
    row.elliptic[a - 1] = elliptic;

    bool all_residues = true;
    for (std::uint64_t x = 1; x < q && all_residues; ++x) {
      all_residues = chi[(x + a * inverse[x]) % q] == 1;
    }
    if (all_residues) row.hyp_i_exceptions.push_back(a);

    std::int32_t genus2 = 0;
    bool all_sixth_residues = true;
    for (std::uint64_t x = 1; x < q; ++x) {
      std::uint64_t v = sixth[x] + a;
      if (v >= q) v -= q;
      genus2 += chi[v];
      all_sixth_residues = all_sixth_residues && chi[v] == 1;
    }
    if (q >= 5) row.genus2[a - 1] = genus2;
    if (all_sixth_residues) row.hyp_ii_failures.push_back(a);
  }
  return row;
}

namespace {

void add_direct_checks(HypReport& report, std::uint64_t q_max) {
  auto row_for = [&](std::uint64_t q) -> const HypRow* {
    for (const auto& r : report.rows) {
      if (r.q == q) return &r;
    }
    return nullptr;
  };
  // part (i) for q in {3, 5}; (5, 3) is the one exception
  for (std::uint64_t q : {3u, 5u}) {
    if (const HypRow* r = row_for(q)) {
      const std::size_t allowed = q == 5 ? 1 : 0;
      const bool ok = q == 5 ? r->hyp_i_exceptions == std::vector<std::uint64_t>{3} : r->hyp_i_exceptions.empty();
      report.direct.push_back({"hyp_i_direct", q, static_cast<std::int64_t>(q - 1 - r->hyp_i_exceptions.size()),
                               static_cast<double>(q - 1 - allowed), ok});
    }
  }
  // part (ii) for q in {3, 5, 11, 17}
  for (std::uint64_t q : {3u, 5u, 11u, 17u}) {
    if (const HypRow* r = row_for(q)) {
      report.direct.push_back({"hyp_ii_direct", q,
                               static_cast<std::int64_t>(q - 1 - r->hyp_ii_failures.size()),
                               static_cast<double>(q - 1), r->hyp_ii_failures.empty()});
    }
  }
  // #S_q > (2/3)(q - 1) where part (ii) is unavailable
  for (std::uint64_t q : {7u, 13u}) {
    if (q > q_max) continue;
    auto size = static_cast<std::int64_t>(residue::smooth_squarefree_residues(q).size());
    report.direct.push_back({"sq_two_thirds", q, size, 2.0 * static_cast<double>(q - 1) / 3.0,
                             3 * size > 2 * static_cast<std::int64_t>(q - 1)});
  }
  if (q_max >= 7) {
    std::int64_t ones = 0;
    for (std::uint64_t x = 1; x < 7; ++x) ones += arith::pow_mod(x, 6, 7) == 1;
    report.direct.push_back({"sixth_power_identity", 7, ones, 6.0, ones == 6});
  }
  for (const auto& d : report.direct) report.direct_pass = report.direct_pass && d.pass;
}

}  // namespace

HypReport verify_lemma_hyp(std::uint64_t q_max, Execution exec) {
  const auto qs = odd_primes_up_to(q_max);
  HypReport report;
  report.rows.resize(qs.size());

#pragma omp parallel for schedule(dynamic) num_threads(thread_count(exec))
  for (std::size_t i = 0; i < qs.size(); ++i) report.rows[i] = hyp_row(qs[i]);

  for (const auto& row : report.rows) {
    const std::uint64_t q = row.q;
    for (std::uint64_t a = 1; a < q; ++a) {
      const std::int64_t e = row.elliptic[a - 1];
      if (!within_hasse(e, q)) report.hasse_pass = false;
      if (q < 5) continue;
      const std::int64_t g = row.genus2[a - 1];
      const int chi_a = row.symbol_a[a - 1];
      if (!within_weil_upper(g, chi_a, q)) report.weil_upper_pass = false;
      if (!within_weil_two_sided(g, chi_a, q)) report.weil_two_sided_pass = false;
      if (!within_weil_symmetric(g, chi_a, q)) {
        report.weil_symmetric_pass = false;
        ++report.weil_symmetric_violations;
        if (!report.first_weil_symmetric_violation) report.first_weil_symmetric_violation = {q, a};
      }
    }
    for (auto a : row.hyp_i_exceptions) {
      report.hyp_i_exceptions.emplace_back(q, a);
      if (!(q == 5 && a == 3)) report.hyp_i_pass = false;
    }
    for (auto a : row.hyp_ii_failures) {
      report.hyp_ii_failures.emplace_back(q, a);
      if (q != 7 && q != 13) report.hyp_ii_pass = false;
    }
  }
  add_direct_checks(report, q_max);
  return report;
}

// --- report records ------------------------------------------------------------

std::vector<CheckRecord> report_records(const SqReport& report) {
  std::vector<CheckRecord> out;
  for (const auto& row : report.rows) {
    out.push_back({"sq_half", row.q, {}, {}, static_cast<std::int64_t>(row.size), (row.q - 1) / 2.0, row.half_ok, true});
  }
  for (const auto& row : report.rows) {
    if (!row.full) {
      out.push_back({"sq_full", row.q, {}, {}, static_cast<std::int64_t>(row.size),
                     static_cast<double>(row.q - 1), false, false});
    }
  }
  return out;
}

std::vector<CheckRecord> report_records(const DensityReport& report) {
  std::vector<CheckRecord> out;
  auto at = [](std::uint64_t x) { return 53.0 * static_cast<double>(x) / 88.0; };
  out.push_back({"squarefree_density", 0, {}, report.x_max, static_cast<std::int64_t>(report.count_at_max),
                 at(report.x_max), report.pass, true});
  // count is recoverable from the slack: 88 count = slack + 53 x
  auto tight_count = (report.tightest_slack + 53 * static_cast<std::int64_t>(report.tightest_x)) / 88;
  out.push_back({"squarefree_density_tightest", 0, {}, report.tightest_x, tight_count, at(report.tightest_x),
                 report.tightest_slack >= 0, true});
  if (report.first_failure) {
    out.push_back({"squarefree_density_failure", 0, {}, *report.first_failure, 0, at(*report.first_failure),
                   false, true});
  }
  return out;
}

std::vector<CheckRecord> report_records(const HypReport& report, bool cells) {
  std::vector<CheckRecord> out;
  for (const auto& row : report.rows) {
    const std::uint64_t q = row.q;
    const double root = std::sqrt(static_cast<double>(q));

    std::int64_t worst = 0;
    bool hasse_ok = true;
    for (auto e : row.elliptic) {
      worst = std::max<std::int64_t>(worst, std::abs(e));
      hasse_ok = hasse_ok && within_hasse(e, q);
    }
    out.push_back({"hasse", q, {}, {}, worst, 2 * root, hasse_ok, true});

    if (q >= 5) {
      // worst cell for each form, by margin 4 sqrt(q) - |deviation|
      std::size_t upper_at = 0, two_at = 0, sym_at = 0;
      bool upper_ok = true, two_ok = true, sym_ok = true;
      for (std::size_t i = 0; i < row.genus2.size(); ++i) {
        const std::int64_t g = row.genus2[i];
        const int c = 1 + row.symbol_a[i];
        if (g + c > row.genus2[upper_at] + 1 + row.symbol_a[upper_at]) upper_at = i;
        if (std::abs(g + c) > std::abs(row.genus2[two_at] + 1 + row.symbol_a[two_at])) two_at = i;
        if (std::max(g + c, -g + c) >
            std::max<std::int64_t>(row.genus2[sym_at] + 1 + row.symbol_a[sym_at],
                                   -row.genus2[sym_at] + 1 + row.symbol_a[sym_at])) {
          sym_at = i;
        }
        upper_ok = upper_ok && within_weil_upper(g, row.symbol_a[i], q);
        two_ok = two_ok && within_weil_two_sided(g, row.symbol_a[i], q);
        sym_ok = sym_ok && within_weil_symmetric(g, row.symbol_a[i], q);
      }
      auto bound_at = [&](std::size_t i) { return 4 * root - 1 - row.symbol_a[i]; };
      out.push_back({"weil_upper", q, upper_at + 1, {}, row.genus2[upper_at], bound_at(upper_at), upper_ok, true});
      out.push_back({"weil_two_sided", q, two_at + 1, {},
                     row.genus2[two_at] + 1 + row.symbol_a[two_at], 4 * root, two_ok, true});
      out.push_back({"weil_symmetric", q, sym_at + 1, {}, row.genus2[sym_at], bound_at(sym_at), sym_ok, false});
    }

    const bool i_ok = row.hyp_i_exceptions.empty() ||
                      (q == 5 && row.hyp_i_exceptions == std::vector<std::uint64_t>{3});
    out.push_back({"hyp_i", q, {}, {}, static_cast<std::int64_t>(row.hyp_i_exceptions.size()),
                   q == 5 ? 1.0 : 0.0, i_ok, true});
    for (auto a : row.hyp_i_exceptions) {
      out.push_back({"hyp_i_exception", q, a, {}, row.elliptic[a - 1], static_cast<double>(q - 1), i_ok, false});
    }
    const bool ii_ok = row.hyp_ii_failures.empty() || q == 7 || q == 13;
    out.push_back({"hyp_ii", q, {}, {}, static_cast<std::int64_t>(row.hyp_ii_failures.size()), 0.0, ii_ok, true});
    for (auto a : row.hyp_ii_failures) {
      std::int64_t value = q >= 5 ? row.genus2[a - 1] : static_cast<std::int64_t>(q - 1);
      out.push_back({"hyp_ii_exception", q, a, {}, value, static_cast<double>(q - 1), ii_ok, false});
    }

    if (cells) {
      for (std::uint64_t a = 1; a < q; ++a) {
        const std::int64_t e = row.elliptic[a - 1];
        out.push_back({"hasse_cell", q, a, {}, e, 2 * root, within_hasse(e, q), true});
        if (q < 5) continue;
        const std::int64_t g = row.genus2[a - 1];
        const int chi_a = row.symbol_a[a - 1];
        out.push_back({"weil_upper_cell", q, a, {}, g, 4 * root - 1 - chi_a, within_weil_upper(g, chi_a, q), true});
        out.push_back({"weil_two_sided_cell", q, a, {}, g + 1 + chi_a, 4 * root,
                       within_weil_two_sided(g, chi_a, q), true});
        out.push_back({"weil_symmetric_cell", q, a, {}, g, 4 * root - 1 - chi_a,
                       within_weil_symmetric(g, chi_a, q), false});
      }
    }
  }
  for (const auto& d : report.direct) out.push_back({d.check, d.q, {}, {}, d.value, d.bound, d.pass, true});
  return out;
}

}  // namespace euclid::verify
