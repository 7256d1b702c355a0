#pragma once

// Constructive extension of a prime seed to a generalized Euclid sequence
// reaching the least missing prime, plus an independent certificate checker.

#include "euclid/factor_service.hpp"
#include "euclid/residue.hpp"
#include "euclid/sequences.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace euclid::prover {

using sequences::PrimeSeed;

enum class StepRole { Auxiliary, Target };
enum class StepNote { QEquals2, DirectSquareRoot, SymbolFlip, FiveSpecial, EnlargeS };

const char* to_string(StepRole role);
const char* to_string(StepNote note);
std::optional<StepRole> parse_role(std::string_view text);
std::optional<StepNote> parse_note(std::string_view text);

/// One generalized Euclid step: p | N_I for I a set of 0-based indices into
/// the seed as extended by all earlier steps.
struct CertificateStep {
  std::vector<std::size_t> subset;  // ascending
  BigInt step_value;                // N_I
  BigInt prime;
  StepRole role = StepRole::Auxiliary;
  StepNote note = StepNote::EnlargeS;

  friend bool operator==(const CertificateStep&, const CertificateStep&) = default;
};

struct Certificate {
  PrimeSeed seed;
  BigInt target;
  std::vector<CertificateStep> steps;

  /// Seed extended by every step's prime.
  PrimeSeed final_seed() const;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

enum class ProveStatus { Proved, BudgetExhausted, Stalled };

const char* to_string(ProveStatus status);

/// Internal bookkeeping for one appended prime.
struct TraceEvent {
  StepNote note;
  std::size_t residues_before = 0;  // #S before the step
  std::size_t residues_after = 0;   // #S after the step
};

struct ProverOptions {
  /// Disabling the symbol flip forces the enlargement loop; only useful for
  /// exercising stabilization in tests.
  bool enable_symbol_flip = true;
  /// Candidate factorizations evaluated concurrently per batch.
  unsigned jobs = 1;
  /// Safety net on appended auxiliary primes per call.
  std::size_t max_steps = 256;
};

struct ProveResult {
  ProveStatus status = ProveStatus::Proved;
  Certificate certificate;  // partial unless status == Proved
  std::vector<TraceEvent> trace;
  std::optional<BigInt> blocking_composite;
  std::string reason;
  /// On a stall: the divisor-residue set and the primes (mod q) found in
  /// d + n/d over all its classes.
  std::optional<residue::ResidueSet> final_residues;
  std::vector<residue::Residue> stall_generators;

  bool proved() const { return status == ProveStatus::Proved; }
};

/// Extends the seed by auxiliary primes until its least missing prime q
/// divides some N_I, then appends q.
ProveResult prove_next_prime(const PrimeSeed& seed, const arith::FactorService& factors,
                             const ProverOptions& options = {});

struct CoverResult {
  std::vector<Certificate> chain;
  PrimeSeed final_seed;
  std::optional<ProveResult> failure;  // the failing attempt, if any

  bool complete() const { return !failure.has_value(); }
};

/// Applies prove_next_prime until every prime <= bound is in the seed.
CoverResult extend_to_cover(const PrimeSeed& seed, std::uint64_t bound,
                            const arith::FactorService& factors, const ProverOptions& options = {});

struct CertificateCheck {
  bool ok = true;
  std::optional<std::size_t> failing_step;  // 0-based
  std::string reason;

  explicit operator bool() const { return ok; }
};

/// Replays a certificate with plain integer arithmetic: recomputes every
/// N_I, checks divisibility, primality and novelty of each prime, and that
/// the final prime is the target.
CertificateCheck verify_certificate(const Certificate& certificate);

/// Also checks that each certificate starts from the previous one's final
/// seed.
CertificateCheck verify_chain(std::span<const Certificate> chain);

}  // namespace euclid::prover
