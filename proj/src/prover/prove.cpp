#include "euclid/prover.hpp"

#include <algorithm>
#include <set>

namespace euclid::prover {

const char* to_string(StepRole role) {
  return role == StepRole::Target ? "Target" : "Auxiliary";
}

const char* to_string(StepNote note) {
  switch (note) {
    case StepNote::QEquals2: return "QEquals2";
    case StepNote::DirectSquareRoot: return "DirectSquareRoot";
    case StepNote::SymbolFlip: return "SymbolFlip";
    case StepNote::FiveSpecial: return "FiveSpecial";
    case StepNote::EnlargeS: return "EnlargeS";
  }
  return "?";
}

std::optional<StepRole> parse_role(std::string_view text) {
  if (text == "Target") return StepRole::Target;
  if (text == "Auxiliary") return StepRole::Auxiliary;
  return std::nullopt;
}

std::optional<StepNote> parse_note(std::string_view text) {
  for (auto note : {StepNote::QEquals2, StepNote::DirectSquareRoot, StepNote::SymbolFlip,
                    StepNote::FiveSpecial, StepNote::EnlargeS}) {
    if (text == to_string(note)) return note;
  }
  return std::nullopt;
}

const char* to_string(ProveStatus status) {
  switch (status) {
    case ProveStatus::Proved: return "proved";
    case ProveStatus::BudgetExhausted: return "budget-exhausted";
    case ProveStatus::Stalled: return "stalled";
  }
  return "?";
}

PrimeSeed Certificate::final_seed() const {
  PrimeSeed out = seed;
  for (const auto& step : steps) out.append(step.prime);
  return out;
}

namespace {

using residue::Residue;
using residue::ResidueSet;
using residue::SubsetMask;

struct Candidate {
  Residue residue_class;
  SubsetMask subset;
  BigInt divisor;
  BigInt step_value;  // d + n/d
};

// Attained classes ordered by representative size, then by divisor value.
std::vector<Candidate> ordered_candidates(const PrimeSeed& seed, const ResidueSet& s) {
  std::vector<Candidate> out;
  out.reserve(s.size());
  for (Residue c : s.insertion_order()) {
    SubsetMask mask = *s.representative(c);
    BigInt d = 1;
    for (auto i : residue::mask_indices(mask)) d *= seed.primes()[i];
    out.push_back({c, mask, d, 0});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    int pa = __builtin_popcountll(a.subset), pb = __builtin_popcountll(b.subset);
    if (pa != pb) return pa < pb;
    return a.divisor < b.divisor;
  });
  for (auto& cand : out) cand.step_value = cand.divisor + seed.product() / cand.divisor;
  // a class and its cofactor class can yield the same N; keep the first
  std::set<BigInt> seen;
  std::erase_if(out, [&](const Candidate& c) { return !seen.insert(c.step_value).second; });
  return out;
}

struct Pick {
  const Candidate* candidate;
  BigInt prime;
};

struct Search {
  std::optional<Pick> pick;
  std::optional<BigInt> blocking;              // first incomplete factorization, in order
  std::vector<BigInt> primes_seen;             // every prime factor encountered
};

// Factorizes candidates in batches of `jobs` and returns the first one, in
// candidate order, whose factors contain a prime accepted by `choose`.
template <typename Choose>
Search first_success(const std::vector<Candidate>& candidates, const arith::FactorService& factors,
                     unsigned jobs, Choose choose) {
  Search out;
  const std::size_t batch = std::max(1u, jobs);
  std::vector<arith::FactorizationResult> results(batch);
  for (std::size_t start = 0; start < candidates.size(); start += batch) {
    const std::size_t len = std::min(batch, candidates.size() - start);
#pragma omp parallel for schedule(dynamic) num_threads(static_cast<int>(len)) if (len > 1)
    for (std::size_t i = 0; i < len; ++i) {
      results[i] = factors.factorize(candidates[start + i].step_value);
    }
    for (std::size_t i = 0; i < len; ++i) {
      const auto& fr = results[i];
      for (const auto& f : fr.factors) out.primes_seen.push_back(f.prime);
      for (const auto& f : fr.factors) {
        if (choose(f.prime)) {
          out.pick = Pick{&candidates[start + i], f.prime};
          return out;
        }
      }
      if (!fr.complete() && !out.blocking) out.blocking = fr.cofactor;
    }
  }
  return out;
}

std::size_t grown_size(const ResidueSet& s, Residue p) {
  std::size_t extra = 0;
  for (Residue x : s.insertion_order()) {
    if (!s.contains(arith::mul_mod(x, p, s.modulus()))) ++extra;
  }
  return s.size() + extra;
}

}  // namespace

ProveResult prove_next_prime(const PrimeSeed& start, const arith::FactorService& factors,
                             const ProverOptions& options) {
  ProveResult result;
  result.certificate.seed = start;
  PrimeSeed seed = start;
  const std::uint64_t q = seed.smallest_missing_prime();
  result.certificate.target = from_u64(q);

  auto emit = [&](std::vector<std::size_t> subset, BigInt step_value, const BigInt& p, StepRole role,
                  StepNote note) {
    result.certificate.steps.push_back({std::move(subset), std::move(step_value), p, role, note});
    seed.append(p);
  };

  if (q == 2) {
    // n is odd, so n + 1 is even
    emit({}, seed.product() + 1, 2, StepRole::Target, StepNote::QEquals2);
    return result;
  }

  for (std::size_t round = 0;; ++round) {
    if (round >= options.max_steps) {
      result.status = ProveStatus::Stalled;
      result.reason = "auxiliary step limit reached";
      return result;
    }
    if (seed.size() > residue::kMaxSubsetPrimes) {
      result.status = ProveStatus::Stalled;
      result.reason = "seed grew beyond 64 primes";
      return result;
    }
    const BigInt& n = seed.product();
    const ResidueSet s = residue::divisor_residues(seed.primes(), q);
    const Residue n_mod = mod_u64(n, q);
    const Residue minus_n = q - n_mod;

    // d^2 = -n (mod q) with d a divisor class gives q | d + n/d
    if (auto root = arith::mod_sqrt(minus_n, q)) {
      for (Residue r : {*root, q - *root}) {
        if (auto rep = s.representative(r)) {
          auto subset = residue::mask_indices(*rep);
          BigInt step = sequences::euclid_step(seed, subset);
          emit(std::move(subset), std::move(step), from_u64(q), StepRole::Target,
               StepNote::DirectSquareRoot);
          return result;
        }
      }
    }

    const auto candidates = ordered_candidates(seed, s);
    auto append_aux = [&](const Pick& pick, StepNote note) {
      Residue p_mod = mod_u64(pick.prime, q);
      result.trace.push_back({note, s.size(), grown_size(s, p_mod)});
      emit(residue::mask_indices(pick.candidate->subset), pick.candidate->step_value, pick.prime,
           StepRole::Auxiliary, note);
    };
    std::optional<BigInt> blocking;

    if (arith::jacobi(static_cast<std::int64_t>(minus_n), q) == -1 && options.enable_symbol_flip) {
      // a prime p | d + n/d with (p/q) = -1 turns -n into a square
      std::vector<Candidate> flips;
      for (const auto& c : candidates) {
        Residue value = (c.residue_class + arith::mul_mod(n_mod, arith::inv_mod(c.residue_class, q), q)) % q;
        if (arith::jacobi(static_cast<std::int64_t>(value), q) == -1) flips.push_back(c);
      }
      auto found = first_success(flips, factors, options.jobs, [&](const BigInt& p) {
        return arith::jacobi(static_cast<std::int64_t>(mod_u64(p, q)), q) == -1;
      });
      if (found.pick) {
        append_aux(*found.pick, StepNote::SymbolFlip);
        continue;
      }
      blocking = found.blocking;
      if (q == 5 && n_mod == 3) {
        // n + 1 = -1 (mod 5) has a prime factor p != 1 (mod 5); pn changes class
        std::vector<Candidate> unit{{1, 0, BigInt(1), n + 1}};
        auto special = first_success(unit, factors, 1, [](const BigInt& p) { return mod_u64(p, 5) != 1; });
        if (special.pick) {
          Pick pick{nullptr, special.pick->prime};
          result.trace.push_back({StepNote::FiveSpecial, s.size(), grown_size(s, mod_u64(pick.prime, q))});
          emit({}, n + 1, pick.prime, StepRole::Auxiliary, StepNote::FiveSpecial);
          continue;
        }
        if (!blocking) blocking = special.blocking;
      }
    }

    if (!s.full()) {
      auto found = first_success(candidates, factors, options.jobs, [&](const BigInt& p) {
        Residue p_mod = mod_u64(p, q);
        return p_mod != 0 && !residue::is_stable_under(s, p_mod);
      });
      if (found.pick) {
        append_aux(*found.pick, StepNote::EnlargeS);
        continue;
      }
      if (!blocking) blocking = found.blocking;
      for (const auto& p : found.primes_seen) {
        Residue p_mod = mod_u64(p, q);
        if (p_mod != 0) result.stall_generators.push_back(p_mod);
      }
    } else if (!options.enable_symbol_flip) {
      for (const auto& c : candidates) {
        for (const auto& p : factors.factorize(c.step_value).primes()) {
          Residue p_mod = mod_u64(p, q);
          if (p_mod != 0) result.stall_generators.push_back(p_mod);
        }
      }
    }

    std::sort(result.stall_generators.begin(), result.stall_generators.end());
    result.stall_generators.erase(std::unique(result.stall_generators.begin(), result.stall_generators.end()),
                                  result.stall_generators.end());
    result.final_residues = s;
    if (blocking) {
      result.status = ProveStatus::BudgetExhausted;
      result.blocking_composite = blocking;
      result.reason = "factorization of " + to_decimal(*blocking) + " exceeded the budget";
    } else {
      result.status = ProveStatus::Stalled;
      result.reason = "divisor residues stabilized without reaching the target";
    }
    return result;
  }
}

CoverResult extend_to_cover(const PrimeSeed& seed, std::uint64_t bound,
                            const arith::FactorService& factors, const ProverOptions& options) {
  if (bound < 2) throw std::invalid_argument("extend_to_cover: bound must be >= 2");
  CoverResult out;
  out.final_seed = seed;
  while (out.final_seed.smallest_missing_prime() <= bound) {
    auto attempt = prove_next_prime(out.final_seed, factors, options);
    if (!attempt.proved()) {
      out.failure = std::move(attempt);
      break;
    }
    out.final_seed = attempt.certificate.final_seed();
    out.chain.push_back(std::move(attempt.certificate));
  }
  return out;
}

}  // namespace euclid::prover
