#pragma once

#include "euclid/factor_service.hpp"
#include "euclid/prover.hpp"
#include "euclid/sequences.hpp"
#include "euclid/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace euclid::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kBudgetTruncated = 2,
  kUsage = 64,
  kBadInput = 65,
  kIoError = 66,
};

using Json = nlohmann::ordered_json;

// --- persistent factorization cache -----------------------------------------

/// Line-oriented store of complete factorizations:
///   <composite> <prime> <prime> ...
/// decimal, space separated, primes ascending with repetition, one entry per
/// line, sorted by composite when written. Entries that fail validation on
/// load are dropped with a warning.
class FactorCache final : public arith::FactorMemo {
 public:
  struct LoadReport {
    std::size_t loaded = 0;
    std::vector<std::string> warnings;
  };

  FactorCache() = default;

  /// A missing file is an empty cache; an unreadable one throws
  /// std::runtime_error.
  LoadReport load(const std::filesystem::path& path);
  LoadReport read(std::istream& in);

  void store(const std::filesystem::path& path) const;
  void write(std::ostream& out) const;

  std::optional<std::vector<BigInt>> lookup(const BigInt& n) const override;
  void remember(const BigInt& n, const std::vector<BigInt>& primes) override;

  std::size_t size() const;
  bool dirty() const;
  std::map<BigInt, std::vector<BigInt>> entries() const;

 private:
  mutable std::mutex mutex_;
  std::map<BigInt, std::vector<BigInt>> entries_;
  bool dirty_ = false;
};

/// Path from EUCLID_CACHE, else ~/.cache/euclid/factors.txt.
std::filesystem::path default_cache_path();

// --- serialization -------------------------------------------------------------

Json to_json(const arith::FactorizationResult& result);
Json to_json(const sequences::SequenceRecord& record);
Json to_json(const prover::Certificate& certificate);
Json to_json(const verify::CheckRecord& record);

/// Throws std::invalid_argument on schema violations.
prover::Certificate certificate_from_json(const Json& doc);

/// Certificate chain document written by `prove`.
Json chain_document(const prover::CoverResult& cover);
/// Accepts a chain document or a bare certificate.
std::vector<prover::Certificate> certificates_from_document(const Json& doc);

// --- command line --------------------------------------------------------------

/// Parses argv and runs the selected subcommand, writing machine output to
/// out and diagnostics to err. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace euclid::cli
