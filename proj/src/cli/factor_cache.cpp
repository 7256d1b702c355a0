#include "euclid/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace euclid::cli {
namespace {

// Returns an error message, or empty when the line is a valid entry.
std::string parse_entry(const std::string& line, BigInt& composite, std::vector<BigInt>& primes) {
  std::istringstream fields(line);
  std::string token;
  std::vector<std::string> tokens;
  while (fields >> token) tokens.push_back(token);
  if (tokens.size() < 2) return "expected a composite and at least one factor";
  try {
    composite = parse_decimal(tokens[0]);
    primes.clear();
    for (std::size_t i = 1; i < tokens.size(); ++i) primes.push_back(parse_decimal(tokens[i]));
  } catch (const std::invalid_argument&) {
    return "non-decimal field";
  }
  BigInt product = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (i > 0 && primes[i] < primes[i - 1]) return "factors not ascending";
    if (!arith::is_prime(primes[i])) return to_decimal(primes[i]) + " is not prime";
    product *= primes[i];
  }
  if (product != composite) return "factors do not multiply to " + to_decimal(composite);
  return {};
}

}  // namespace

FactorCache::LoadReport FactorCache::read(std::istream& in) {
  LoadReport report;
  std::string line;
  std::size_t line_no = 0;
  std::map<BigInt, std::vector<BigInt>> parsed;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    BigInt composite;
    std::vector<BigInt> primes;
    auto problem = parse_entry(line, composite, primes);
    if (!problem.empty()) {
      report.warnings.push_back("cache line " + std::to_string(line_no) + ": " + problem + ", skipped");
      continue;
    }
    parsed[composite] = std::move(primes);
    ++report.loaded;
  }
  std::lock_guard lock(mutex_);
  for (auto& [n, primes] : parsed) entries_[n] = std::move(primes);
  return report;
}

FactorCache::LoadReport FactorCache::load(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read factor cache " + path.string());
  return read(in);
}

void FactorCache::write(std::ostream& out) const {
  std::lock_guard lock(mutex_);
  for (const auto& [n, primes] : entries_) {
    out << to_decimal(n);
    for (const auto& p : primes) out << ' ' << to_decimal(p);
    out << '\n';
  }
}

void FactorCache::store(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write factor cache " + tmp.string());
    write(out);
    if (!out.flush()) throw std::runtime_error("cannot write factor cache " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<std::vector<BigInt>> FactorCache::lookup(const BigInt& n) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(n);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void FactorCache::remember(const BigInt& n, const std::vector<BigInt>& primes) {
  std::lock_guard lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(n, primes);
  if (inserted) dirty_ = true;
}

std::size_t FactorCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

bool FactorCache::dirty() const {
  std::lock_guard lock(mutex_);
  return dirty_;
}

std::map<BigInt, std::vector<BigInt>> FactorCache::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv("EUCLID_CACHE"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "euclid" / "factors.txt";
  }
  return "euclid-factors.txt";
}

}  // namespace euclid::cli
