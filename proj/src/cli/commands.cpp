#include "euclid/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

namespace euclid::cli {
namespace {

struct Common {
  arith::Budget budget;
  std::string cache_path;
  bool no_cache = false;
  bool stats = false;
  unsigned jobs = 1;
  bool pretty = false;
};

unsigned effective_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string dump(const Json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

// Owns the factor cache and service for one command run.
class Session {
 public:
  Session(const Common& common, std::ostream& err) : common_(common), err_(err) {}

  // Returns an exit code on failure.
  std::optional<int> open() {
    if (!common_.no_cache) {
      path_ = common_.cache_path.empty() ? default_cache_path() : std::filesystem::path(common_.cache_path);
      cache_ = std::make_unique<FactorCache>();
      try {
        auto report = cache_->load(path_);
        for (const auto& w : report.warnings) err_ << "warning: " << w << '\n';
      } catch (const std::exception& e) {
        err_ << "error: " << e.what() << '\n';
        return kIoError;
      }
    }
    service_ = std::make_unique<arith::FactorService>(common_.budget, cache_.get());
    return std::nullopt;
  }

  const arith::FactorService& factors() const { return *service_; }

  void close() {
    if (cache_ && cache_->dirty()) {
      try {
        cache_->store(path_);
      } catch (const std::exception& e) {
        err_ << "warning: factor cache not saved: " << e.what() << '\n';
      }
    }
    if (common_.stats) {
      auto s = service_->stats();
      Json j;
      j["calls"] = s.calls;
      j["memo_hits"] = s.memo_hits;
      j["rho_iterations"] = s.rho_iterations;
      err_ << Json{{"stats", j}}.dump() << '\n';
    }
  }

 private:
  const Common& common_;
  std::ostream& err_;
  std::filesystem::path path_;
  std::unique_ptr<FactorCache> cache_;
  std::unique_ptr<arith::FactorService> service_;
};

// --- seq --------------------------------------------------------------------

void print_record(std::ostream& out, const sequences::SequenceRecord& r, bool pretty) {
  if (!pretty) {
    out << to_json(r).dump() << '\n';
    return;
  }
  out << std::setw(4) << r.index << "  " << std::setw(12) << to_decimal(r.prime) << "  witness "
      << to_decimal(r.witness_divisor);
  if (r.obstruction_symbol) out << "  (-n/p) = " << *r.obstruction_symbol;
  out << '\n';
}

int cmd_seq(const Common& common, const std::string& name, std::size_t count, std::ostream& out,
            std::ostream& err) {
  if (name != "em1" && name != "em2" && name != "chua" && name != "pomerance") {
    err << "error: unknown sequence '" << name << "' (expected em1, em2, chua or pomerance)\n";
    return kUsage;
  }
  if (count == 0) {
    err << "error: --count must be positive\n";
    return kUsage;
  }
  if (name == "chua" && count > sequences::kChuaMaxTerms) {
    err << "error: chua is limited to " << sequences::kChuaMaxTerms << " terms\n";
    return kBadInput;
  }
  if (name == "pomerance" && count > sequences::kPomeranceMaxTerms) {
    err << "error: pomerance is limited to " << sequences::kPomeranceMaxTerms << " terms\n";
    return kBadInput;
  }

  Session session(common, err);
  if (auto code = session.open()) return *code;

  sequences::SequenceRun run;
  if (name == "em1") {
    run = sequences::generate_euclid_mullin(count, sequences::EuclidMode::Min, session.factors());
  } else if (name == "em2") {
    run = sequences::generate_euclid_mullin(count, sequences::EuclidMode::Max, session.factors());
  } else if (name == "chua") {
    run = sequences::generate_chua(count, session.factors());
  } else {
    run.records = sequences::generate_pomerance_records(count);
  }
  for (const auto& r : run.records) print_record(out, r, common.pretty);

  int code = kOk;
  if (run.truncated) {
    Json marker;
    marker["truncated"] = true;
    marker["reason"] = run.truncated->reason;
    marker["blocking"] = to_decimal(run.truncated->blocking);
    out << marker.dump() << '\n';
    err << "truncated after " << run.records.size() << " terms: " << run.truncated->reason << '\n';
    code = kBudgetTruncated;
  }
  session.close();
  return code;
}

// --- prove ------------------------------------------------------------------

std::optional<sequences::PrimeSeed> parse_seed(const std::string& text, std::ostream& err) {
  std::vector<BigInt> primes;
  if (text.find_first_not_of(" \t") != std::string::npos) {
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
      auto b = token.find_first_not_of(" \t");
      auto e = token.find_last_not_of(" \t");
      std::string trimmed = b == std::string::npos ? std::string() : token.substr(b, e - b + 1);
      try {
        primes.push_back(parse_decimal(trimmed));
      } catch (const std::invalid_argument&) {
        err << "error: seed entry '" << trimmed << "' is not a decimal integer\n";
        return std::nullopt;
      }
    }
  }
  try {
    return sequences::PrimeSeed(std::move(primes));
  } catch (const std::invalid_argument& e) {
    err << "error: invalid seed: " << e.what() << '\n';
    return std::nullopt;
  }
}

std::string summary(const prover::Certificate& c) {
  std::ostringstream line;
  std::size_t aux = c.steps.empty() ? 0 : c.steps.size() - 1;
  line << "target " << to_decimal(c.target) << ": " << c.steps.size() << " step"
       << (c.steps.size() == 1 ? "" : "s");
  if (aux > 0) {
    line << ", auxiliary";
    for (std::size_t i = 0; i < aux; ++i) line << (i ? "," : " ") << to_decimal(c.steps[i].prime);
  }
  line << ", verified";
  return line.str();
}

struct ProveArgs {
  std::string seed;
  std::uint64_t cover = 0;
  std::uint64_t target = 0;
  std::string out_path;
};

int cmd_prove(const Common& common, const ProveArgs& args, std::ostream& out, std::ostream& err) {
  auto seed = parse_seed(args.seed, err);
  if (!seed) return kBadInput;
  std::uint64_t bound = 0;
  if (args.target != 0) {
    if (!arith::is_prime(args.target)) {
      err << "error: target " << args.target << " is not prime\n";
      return kBadInput;
    }
    bound = args.target;
  } else if (args.cover != 0) {
    if (args.cover < 2) {
      err << "error: --cover must be at least 2\n";
      return kBadInput;
    }
    bound = args.cover;
  }

  Session session(common, err);
  if (auto code = session.open()) return *code;

  prover::ProverOptions options;
  options.jobs = effective_jobs(common.jobs);
  prover::CoverResult cover;
  if (bound != 0) {
    cover = prover::extend_to_cover(*seed, bound, session.factors(), options);
  } else {
    cover.final_seed = *seed;
    auto attempt = prover::prove_next_prime(*seed, session.factors(), options);
    if (attempt.proved()) {
      cover.final_seed = attempt.certificate.final_seed();
      cover.chain.push_back(std::move(attempt.certificate));
    } else {
      cover.failure = std::move(attempt);
    }
  }
  session.close();

  auto check = prover::verify_chain(cover.chain);
  if (!check) {
    err << "error: certificate failed verification: " << check.reason << '\n';
    return kVerificationFailed;
  }

  std::ostream* summaries = &err;
  std::ofstream file;
  std::ostream* doc_out = &out;
  if (!args.out_path.empty()) {
    file.open(args.out_path, std::ios::trunc);
    if (!file) {
      err << "error: cannot write " << args.out_path << '\n';
      return kIoError;
    }
    doc_out = &file;
    summaries = &out;
  }
  *doc_out << dump(chain_document(cover), common.pretty) << '\n';
  if (file.is_open() && !file.flush()) {
    err << "error: cannot write " << args.out_path << '\n';
    return kIoError;
  }
  for (const auto& c : cover.chain) *summaries << summary(c) << '\n';

  if (cover.failure) {
    err << "incomplete: " << prover::to_string(cover.failure->status) << " at target "
        << to_decimal(cover.failure->certificate.target) << ": " << cover.failure->reason << '\n';
    return kBudgetTruncated;
  }
  return kOk;
}

// --- verify -----------------------------------------------------------------

int cmd_verify_certificate(const Common& common, const std::string& path, std::ostream& out,
                           std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot read " << path << '\n';
    return kIoError;
  }
  std::vector<prover::Certificate> chain;
  Json doc;
  try {
    doc = Json::parse(in);
    chain = certificates_from_document(doc);
  } catch (const Json::exception& e) {
    err << "error: " << path << ": malformed JSON: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << path << ": " << e.what() << '\n';
    return kBadInput;
  }
  auto check = prover::verify_chain(chain);
  Json result;
  result["check"] = "certificate";
  result["certificates"] = chain.size();
  result["pass"] = check.ok;
  if (!check.ok) {
    if (check.failing_step) result["failing_step"] = *check.failing_step;
    result["reason"] = check.reason;
  }
  if (doc.is_object() && doc.contains("complete") && doc["complete"].is_boolean()) {
    result["complete"] = doc["complete"];
  }
  out << dump(result, common.pretty) << '\n';
  if (!check.ok) {
    err << "verification failed: " << check.reason << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

int emit_records(const Common& common, const std::vector<verify::CheckRecord>& records, std::ostream& out,
                 std::ostream& err) {
  const verify::CheckRecord* first_failure = nullptr;
  for (const auto& r : records) {
    if (r.asserted && !r.pass && !first_failure) first_failure = &r;
    if (common.pretty) {
      out << std::left << std::setw(28) << r.check << std::right << " q=" << std::setw(6) << r.q;
      if (r.a) out << " a=" << std::setw(6) << *r.a;
      if (r.x) out << " x=" << std::setw(8) << *r.x;
      out << " value=" << std::setw(8) << r.value << " bound=" << std::setw(10) << r.bound << "  "
          << (r.pass ? "pass" : "FAIL") << (r.asserted ? "" : " (reported)") << '\n';
    } else {
      out << to_json(r).dump() << '\n';
    }
  }
  if (first_failure) {
    err << "first failing record: " << to_json(*first_failure).dump() << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

Json pair_list(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
  Json out = Json::array();
  for (const auto& [q, a] : pairs) out.push_back(Json::array({q, a}));
  return out;
}

int cmd_verify_lemmas(const Common& common, std::uint64_t q_max, bool cells, std::ostream& out,
                      std::ostream& err) {
  if (q_max < 3) {
    err << "error: --qmax must be at least 3\n";
    return kBadInput;
  }
  verify::Execution exec{common.jobs};
  auto sq = verify::verify_lemma_sq(q_max, exec);
  auto hyp = verify::verify_lemma_hyp(q_max, exec);
  auto records = verify::report_records(sq);
  auto hyp_records = verify::report_records(hyp, cells);
  records.insert(records.end(), hyp_records.begin(), hyp_records.end());
  int code = emit_records(common, records, out, err);

  Json summary;
  summary["check"] = "summary";
  summary["qmax"] = q_max;
  summary["pass"] = sq.pass && hyp.pass();
  summary["sq_non_full"] = sq.non_full;
  summary["hyp_i_exceptions"] = pair_list(hyp.hyp_i_exceptions);
  summary["hyp_ii_failures"] = pair_list(hyp.hyp_ii_failures);
  summary["weil_symmetric_violations"] = hyp.weil_symmetric_violations;
  out << dump(summary, common.pretty) << '\n';
  if (code == kOk && !(sq.pass && hyp.pass())) code = kVerificationFailed;
  return code;
}

int cmd_verify_sq(const Common& common, std::uint64_t q, std::ostream& out, std::ostream& err) {
  if (q < 3 || !arith::is_prime(q)) {
    err << "error: --q must be an odd prime\n";
    return kBadInput;
  }
  auto s = residue::smooth_squarefree_residues(q);
  Json j;
  j["q"] = q;
  j["members"] = s.members();
  j["size"] = s.size();
  j["full"] = s.full();
  bool half = 2 * s.size() > q - 1;
  j["pass"] = half;
  out << dump(j, common.pretty) << '\n';
  if (!half) {
    err << "#S_q <= (q-1)/2 for q = " << q << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_verify_density(const Common& common, std::uint64_t x_max, std::ostream& out, std::ostream& err) {
  if (x_max < 1) {
    err << "error: --xmax must be positive\n";
    return kBadInput;
  }
  return emit_records(common, verify::report_records(verify::verify_squarefree_density(x_max)), out, err);
}

// CLI11 writes help and errors through std::cout/cerr; route them instead.
int parse_error(const CLI::App& app, const CLI::ParseError& e, std::ostream& out, std::ostream& err) {
  if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
    out << app.help();
    return kOk;
  }
  err << "error: " << e.what() << '\n' << "run with --help for usage\n";
  return kUsage;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Euclid sequences: generators, prover and lemma checks", "euclid"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--trial-bound", common.budget.trial_division_bound, "Trial division bound")
      ->capture_default_str();
  app.add_option("--rho-cap", common.budget.rho_iteration_cap, "Pollard rho iteration cap")
      ->capture_default_str();
  app.add_option("--rng-seed", common.budget.prng_seed, "Seed for the rho starting points")
      ->capture_default_str();
  auto* cache_opt = app.add_option("--cache", common.cache_path, "Factor cache file (default $EUCLID_CACHE)");
  app.add_flag("--no-cache", common.no_cache, "Do not read or write the factor cache")->excludes(cache_opt);
  app.add_flag("--stats", common.stats, "Print factorization counters to stderr");
  app.add_option("--jobs", common.jobs, "Worker threads (0 = all)")->capture_default_str();
  app.add_flag("--pretty", common.pretty, "Human-readable output");

  std::string seq_name;
  std::size_t seq_count = 10;
  auto* seq = app.add_subcommand("seq", "Generate em1, em2, chua or pomerance");
  seq->add_option("name", seq_name, "Sequence name")->required();
  seq->add_option("--count", seq_count, "Number of terms")->capture_default_str();

  ProveArgs prove_args;
  auto* prove = app.add_subcommand("prove", "Extend a prime seed and emit certificates");
  prove->add_option("--seed", prove_args.seed, "Comma-separated primes");
  auto* cover_opt = prove->add_option("--cover", prove_args.cover, "Cover every prime up to this bound");
  prove->add_option("--target", prove_args.target, "Cover every prime up to this prime")->excludes(cover_opt);
  prove->add_option("--out", prove_args.out_path, "Write the certificate document here");

  auto* verify = app.add_subcommand("verify", "Check certificates and lemmas");
  verify->require_subcommand(1);
  std::string cert_path;
  auto* v_cert = verify->add_subcommand("certificate", "Replay a certificate file");
  v_cert->add_option("path", cert_path, "Certificate JSON")->required();
  std::uint64_t q_max = 0;
  bool cells = false;
  auto* v_lemmas = verify->add_subcommand("lemmas", "Sweep both lemmas up to --qmax");
  v_lemmas->add_option("--qmax", q_max, "Largest prime q")->required();
  v_lemmas->add_flag("--cells", cells, "One record per (q, a)");
  std::uint64_t sq_q = 0;
  auto* v_sq = verify->add_subcommand("sq", "Smooth squarefree residues mod q");
  v_sq->add_option("--q", sq_q, "Odd prime")->required();
  std::uint64_t x_max = 0;
  auto* v_density = verify->add_subcommand("density", "Squarefree density up to --xmax");
  v_density->add_option("--xmax", x_max, "Largest x")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return parse_error(app, e, out, err);
  }

  try {
    if (*seq) return cmd_seq(common, seq_name, seq_count, out, err);
    if (*prove) return cmd_prove(common, prove_args, out, err);
    if (*v_cert) return cmd_verify_certificate(common, cert_path, out, err);
    if (*v_lemmas) return cmd_verify_lemmas(common, q_max, cells, out, err);
    if (*v_sq) return cmd_verify_sq(common, sq_q, out, err);
    if (*v_density) return cmd_verify_density(common, x_max, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kUsage;
}

}  // namespace euclid::cli
