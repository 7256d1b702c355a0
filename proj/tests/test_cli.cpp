#include "euclid/cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace euclid;
using namespace euclid::cli;

namespace {

struct Outcome {
  int code = 0;
  std::string out, err;

  std::vector<std::string> lines() const {
    std::vector<std::string> v;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) v.push_back(line);
    return v;
  }
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "euclid");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  static const auto dir = [] {
    auto d = std::filesystem::temp_directory_path() / ("euclid-cli-test-" + std::to_string(::getpid()));
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json stats_of(const std::string& err) {
  std::istringstream in(err);
  Json last;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("{\"stats\"", 0) == 0) last = Json::parse(line).at("stats");
  }
  return last;
}

std::vector<std::string> terms(const Outcome& o) {
  std::vector<std::string> p;
  for (const auto& line : o.lines()) p.push_back(Json::parse(line).at("p").get<std::string>());
  return p;
}

}  // namespace

TEST_CASE("factor cache entries") {
  FactorCache cache;
  std::istringstream in("1807 13 139\n1807 13 140\n\n23479 53 443\n12 2 2 3\n12 3 2 2\n15 3 x\n6\n");
  auto report = cache.read(in);
  CHECK(report.loaded == 3);
  CHECK(report.warnings.size() == 4);
  CHECK(cache.lookup(1807) == std::vector<BigInt>{13, 139});
  CHECK(cache.lookup(12) == std::vector<BigInt>{2, 2, 3});
  CHECK_FALSE(cache.lookup(15).has_value());
  CHECK_FALSE(cache.dirty());

  FactorCache empty;
  std::istringstream none("");
  CHECK(empty.read(none).loaded == 0);
  CHECK(empty.size() == 0);
  CHECK_FALSE(empty.lookup(1807).has_value());

  FactorCache bad;
  std::istringstream wrong("1807 13 140\n");
  auto r = bad.read(wrong);
  CHECK(r.loaded == 0);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("140 is not prime") != std::string::npos);
}

TEST_CASE("factor cache round trip") {
  FactorCache cache;
  cache.remember(251035, {5, 50207});
  cache.remember(1807, {13, 139});
  cache.remember(BigInt("1000036000099"), {1000003, 1000033});
  CHECK(cache.dirty());
  auto path = scratch("roundtrip/factors.txt");
  cache.store(path);
  CHECK(slurp(path) == "1807 13 139\n251035 5 50207\n1000036000099 1000003 1000033\n");

  FactorCache again;
  auto report = again.load(path);
  CHECK(report.warnings.empty());
  CHECK(again.entries() == cache.entries());

  FactorCache missing;
  CHECK(missing.load(scratch("does-not-exist.txt")).loaded == 0);
}

TEST_CASE("EUCLID_CACHE selects the default path") {
  auto path = scratch("env/cache.txt");
  ::setenv("EUCLID_CACHE", path.c_str(), 1);
  CHECK(default_cache_path() == path);
  auto o = invoke({"seq", "em1", "--count", "5"});
  CHECK(o.code == 0);
  CHECK(std::filesystem::exists(path));
  CHECK(slurp(path).find("1807 13 139\n") != std::string::npos);
  ::unsetenv("EUCLID_CACHE");
}

TEST_CASE("seq command") {
  auto o = invoke({"seq", "em1", "--count", "8", "--no-cache"});
  CHECK(o.code == 0);
  CHECK(terms(o) == std::vector<std::string>{"2", "3", "7", "43", "13", "53", "5", "6221671"});
  auto last = Json::parse(o.lines().back());
  CHECK(last.at("k") == 8);
  CHECK(last.at("witness") == "1");
  CHECK_FALSE(last.contains("obstruction"));

  o = invoke({"seq", "em2", "--count", "6", "--no-cache"});
  CHECK(terms(o) == std::vector<std::string>{"2", "3", "7", "43", "139", "50207"});

  o = invoke({"seq", "chua", "--count", "5", "--no-cache"});
  CHECK(o.code == 0);
  CHECK(terms(o) == std::vector<std::string>{"2", "3", "5", "11", "37"});
  CHECK(Json::parse(o.lines()[4]).at("obstruction") == 1);
  CHECK(Json::parse(o.lines()[4]).at("witness") == "15");

  o = invoke({"seq", "pomerance", "--count", "6", "--no-cache"});
  CHECK(terms(o) == std::vector<std::string>{"2", "3", "7", "5", "11", "13"});

  o = invoke({"seq", "pomerance", "--count", "6", "--no-cache", "--pretty"});
  CHECK(o.code == 0);
  CHECK(o.lines().size() == 6);
  CHECK(o.out.find("witness") != std::string::npos);
}

TEST_CASE("seq errors and truncation") {
  CHECK(invoke({"seq", "fibonacci"}).code == kUsage);
  CHECK(invoke({"seq", "em1", "--count", "x"}).code == kUsage);
  CHECK(invoke({"seq"}).code == kUsage);
  CHECK(invoke({"frobnicate"}).code == kUsage);
  CHECK(invoke({}).code == kUsage);
  CHECK(invoke({"seq", "chua", "--count", "21", "--no-cache"}).code == kBadInput);
  CHECK(invoke({"seq", "pomerance", "--count", "26", "--no-cache"}).code == kBadInput);
  auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("prove") != std::string::npos);

  auto o = invoke({"seq", "em1", "--count", "8", "--no-cache", "--trial-bound", "10", "--rho-cap", "0"});
  CHECK(o.code == kBudgetTruncated);
  auto marker = Json::parse(o.lines().back());
  CHECK(marker.at("truncated") == true);
  CHECK(marker.at("blocking") == "1807");
  CHECK(o.lines().size() == 5);
}

TEST_CASE("warm cache needs no rho iterations") {
  auto path = scratch("warm/factors.txt");
  // a tiny trial bound forces rho on the cold run
  std::vector<std::string> args{"seq", "em1", "--count", "8", "--trial-bound", "2", "--cache", path.string(),
                                "--stats"};
  auto cold = invoke(args);
  REQUIRE(cold.code == 0);
  auto cold_stats = stats_of(cold.err);
  CHECK(cold_stats.at("rho_iterations").get<std::uint64_t>() > 0);
  CHECK(cold_stats.at("memo_hits") == 0);

  auto warm = invoke(args);
  REQUIRE(warm.code == 0);
  auto warm_stats = stats_of(warm.err);
  CHECK(warm_stats.at("rho_iterations") == 0);
  CHECK(warm_stats.at("memo_hits") == 8);
  CHECK(warm.out == cold.out);
}

TEST_CASE("prove command") {
  auto o = invoke({"prove", "--seed", "2,3,5,7", "--no-cache"});
  REQUIRE(o.code == 0);
  auto doc = Json::parse(o.out);
  CHECK(doc.at("complete") == true);
  auto chain = certificates_from_document(doc);
  REQUIRE(chain.size() == 1);
  REQUIRE(chain[0].steps.size() == 2);
  CHECK(chain[0].steps[0].prime == 211);
  CHECK(chain[0].steps[1].prime == 11);
  CHECK(chain[0].steps[1].step_value == 14773);
  CHECK(doc["certificates"][0]["steps"][1]["I"] == Json::array({1}));
  CHECK(o.err.find("target 11: 2 steps, auxiliary 211, verified") != std::string::npos);

  o = invoke({"prove", "--seed", "", "--cover", "5", "--no-cache"});
  REQUIRE(o.code == 0);
  chain = certificates_from_document(Json::parse(o.out));
  REQUIRE(chain.size() == 3);
  CHECK(chain[2].final_seed().primes() == std::vector<BigInt>{2, 3, 5});

  o = invoke({"prove", "--seed", " 3 , 5 ", "--target", "7", "--no-cache"});
  CHECK(o.code == 0);
  CHECK(Json::parse(o.out).at("final_seed").size() >= 4);

  CHECK(invoke({"prove", "--seed", "4", "--no-cache"}).code == kBadInput);
  CHECK(invoke({"prove", "--seed", "2,x", "--no-cache"}).code == kBadInput);
  CHECK(invoke({"prove", "--seed", "2,2", "--no-cache"}).code == kBadInput);
  CHECK(invoke({"prove", "--target", "9", "--no-cache"}).code == kBadInput);
  CHECK(invoke({"prove", "--cover", "5", "--target", "5", "--no-cache"}).code == kUsage);
}

TEST_CASE("prove reports budget exhaustion with a partial chain") {
  auto path = scratch("partial.json");
  auto o = invoke({"prove", "--seed", "", "--cover", "60", "--trial-bound", "2", "--rho-cap", "0", "--no-cache",
                "--out", path.string()});
  CHECK(o.code == kBudgetTruncated);
  auto doc = Json::parse(slurp(path));
  CHECK(doc.at("complete") == false);
  CHECK(doc.at("failure").at("status") == "budget-exhausted");
  CHECK(doc.at("failure").contains("blocking"));
  // what was written still verifies
  CHECK(invoke({"verify", "certificate", path.string()}).code == 0);
}

TEST_CASE("verify certificate") {
  auto path = scratch("cert.json");
  auto o = invoke({"prove", "--seed", "2,3,5,7", "--no-cache", "--out", path.string()});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("target 11") != std::string::npos);
  o = invoke({"verify", "certificate", path.string()});
  CHECK(o.code == 0);
  CHECK(Json::parse(o.out).at("pass") == true);

  // hand-corrupt the auxiliary prime
  auto doc = Json::parse(slurp(path));
  doc["certificates"][0]["steps"][0]["p"] = "13";
  auto bad = scratch("cert-bad.json");
  std::ofstream(bad) << doc.dump();
  o = invoke({"verify", "certificate", bad.string()});
  CHECK(o.code == kVerificationFailed);
  CHECK(o.err.find("p ∤ N_I") != std::string::npos);
  CHECK(Json::parse(o.out).at("failing_step") == 0);

  // a bare certificate object is accepted too
  auto bare = scratch("cert-bare.json");
  std::ofstream(bare) << Json::parse(slurp(path))["certificates"][0].dump();
  CHECK(invoke({"verify", "certificate", bare.string()}).code == 0);

  CHECK(invoke({"verify", "certificate", scratch("missing.json").string()}).code == kIoError);
  auto garbage = scratch("garbage.json");
  std::ofstream(garbage) << "{not json";
  CHECK(invoke({"verify", "certificate", garbage.string()}).code == kBadInput);
  auto schema = scratch("schema.json");
  std::ofstream(schema) << R"({"seed": ["2"], "target": 3, "steps": []})";
  CHECK(invoke({"verify", "certificate", schema.string()}).code == kBadInput);
}

TEST_CASE("verify lemmas, sq, density") {
  auto o = invoke({"verify", "lemmas", "--qmax", "200"});
  CHECK(o.code == 0);
  auto summary = Json::parse(o.lines().back());
  CHECK(summary.at("pass") == true);
  CHECK(summary.at("hyp_ii_failures") == Json::parse("[[7,1],[7,3],[13,2],[13,11]]"));
  CHECK(summary.at("hyp_i_exceptions") == Json::parse("[[5,3]]"));
  CHECK(summary.at("sq_non_full") == Json::parse("[5,7]"));

  auto cells = invoke({"verify", "lemmas", "--qmax", "30", "--cells", "--jobs", "2"});
  CHECK(cells.code == 0);
  CHECK(cells.out.find("\"hasse_cell\"") != std::string::npos);

  o = invoke({"verify", "sq", "--q", "7"});
  CHECK(o.code == 0);
  auto j = Json::parse(o.out);
  CHECK(j.at("members") == Json::parse("[1,2,3,5,6]"));
  CHECK(j.at("size") == 5);
  CHECK(j.at("full") == false);
  CHECK(invoke({"verify", "sq", "--q", "9"}).code == kBadInput);

  o = invoke({"verify", "density", "--xmax", "1000"});
  CHECK(o.code == 0);
  CHECK(Json::parse(o.lines()[0]).at("check") == "squarefree_density");
  CHECK(invoke({"verify"}).code == kUsage);
  CHECK(invoke({"verify", "lemmas"}).code == kUsage);
}

TEST_CASE("certificate json round trip") {
  prover::Certificate c;
  c.seed = sequences::PrimeSeed({2, 3, 5, 7});
  c.target = 11;
  c.steps = {{{}, 211, 211, prover::StepRole::Auxiliary, prover::StepNote::SymbolFlip},
             {{1}, 14773, 11, prover::StepRole::Target, prover::StepNote::DirectSquareRoot}};
  auto j = to_json(c);
  CHECK(j.dump() ==
        R"({"seed":["2","3","5","7"],"target":"11","steps":[{"I":[],"N":"211","p":"211","role":"Auxiliary",)"
        R"("note":"SymbolFlip"},{"I":[1],"N":"14773","p":"11","role":"Target","note":"DirectSquareRoot"}]})");
  CHECK(certificate_from_json(j) == c);

  auto broken = j;
  broken["steps"][0]["role"] = "Sidekick";
  CHECK_THROWS_AS(certificate_from_json(broken), std::invalid_argument);
  broken = j;
  broken["steps"][0].erase("N");
  CHECK_THROWS_AS(certificate_from_json(broken), std::invalid_argument);
  broken = j;
  broken["seed"] = Json::array({"4"});
  CHECK_THROWS_AS(certificate_from_json(broken), std::invalid_argument);
}

TEST_CASE("outputs are deterministic") {
  auto a = invoke({"prove", "--seed", "", "--cover", "23", "--no-cache"});
  auto b = invoke({"prove", "--seed", "", "--cover", "23", "--no-cache", "--jobs", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
