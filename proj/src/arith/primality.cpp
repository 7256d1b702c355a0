#include "euclid/arith.hpp"

#include <array>
#include <cmath>

namespace euclid::arith {
namespace {

constexpr std::array<std::uint64_t, 12> kWitnessBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// --- machine-word path -------------------------------------------------------

bool strong_probable_prime(std::uint64_t n, std::uint64_t base) {
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = pow_mod(base % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool is_square(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) + b) % n);
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return a >= b ? a - b : n - (b - a);
}

std::uint64_t half_mod(std::uint64_t a, std::uint64_t n) {
  if ((a & 1) == 0) return a / 2;
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) + n) / 2);
}

// Selfridge method A: first D in 5, -7, 9, -11, ... with (D/n) = -1.
// Returns 0 when a D with (D/n) = 0 exposes a factor.
std::int64_t selfridge_d(std::uint64_t n) {
  std::int64_t d = 5;
  for (;;) {
    int j = jacobi(d, n);
    if (j == -1) return d;
    if (j == 0) {
      std::uint64_t mag = static_cast<std::uint64_t>(d < 0 ? -d : d);
      if (mag != n) return 0;
    }
    d = d > 0 ? -(d + 2) : -d + 2;
  }
}

bool strong_lucas_probable_prime(std::uint64_t n) {
  if (is_square(n)) return false;
  std::int64_t d_signed = selfridge_d(n);
  if (d_signed == 0) return false;
  auto to_mod = [n](std::int64_t v) {
    if (v >= 0) return static_cast<std::uint64_t>(v) % n;
    return (n - static_cast<std::uint64_t>(-v) % n) % n;
  };
  const std::uint64_t dm = to_mod(d_signed);
  const std::uint64_t qm = to_mod((1 - d_signed) / 4);

  std::uint64_t k = n + 1;  // n odd and < 2^64, so no overflow unless n = 2^64-1 (composite)
  unsigned s = 0;
  while ((k & 1) == 0) {
    k >>= 1;
    ++s;
  }
  std::uint64_t u = 1, v = 1, qk = qm;  // U_1, V_1 with P = 1
  int top = 63 - __builtin_clzll(k);
  for (int bit = top - 1; bit >= 0; --bit) {
    u = mul_mod(u, v, n);
    v = sub_mod(mul_mod(v, v, n), add_mod(qk, qk, n), n);
    qk = mul_mod(qk, qk, n);
    if ((k >> bit) & 1) {
      std::uint64_t nu = half_mod(add_mod(u, v, n), n);
      std::uint64_t nv = half_mod(add_mod(mul_mod(dm, u, n), v, n), n);
      u = nu;
      v = nv;
      qk = mul_mod(qk, qm, n);
    }
  }
  if (u == 0 || v == 0) return true;
  for (unsigned r = 1; r < s; ++r) {
    v = sub_mod(mul_mod(v, v, n), add_mod(qk, qk, n), n);
    if (v == 0) return true;
    qk = mul_mod(qk, qk, n);
  }
  return false;
}

// --- multiprecision path -----------------------------------------------------

bool strong_probable_prime(const BigInt& n, unsigned long base) {
  BigInt n1 = n - 1;
  BigInt d = n1;
  auto s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  BigInt x;
  BigInt b = base;
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n1) return true;
  for (decltype(s) r = 1; r < s; ++r) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n1) return true;
  }
  return false;
}

bool strong_lucas_probable_prime(const BigInt& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  long d_signed = 5;
  for (;;) {
    int j = jacobi(BigInt(d_signed), n);
    if (j == -1) break;
    if (j == 0 && BigInt(d_signed < 0 ? -d_signed : d_signed) != n) return false;
    d_signed = d_signed > 0 ? -(d_signed + 2) : -d_signed + 2;
  }
  BigInt dm, qm;
  mpz_fdiv_r(dm.get_mpz_t(), BigInt(d_signed).get_mpz_t(), n.get_mpz_t());
  mpz_fdiv_r(qm.get_mpz_t(), BigInt((1 - d_signed) / 4).get_mpz_t(), n.get_mpz_t());

  BigInt k = n + 1;
  auto s = mpz_scan1(k.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(k.get_mpz_t(), k.get_mpz_t(), s);

  BigInt u = 1, v = 1, qk = qm, tmp;
  auto reduce = [&n](BigInt& x) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t()); };
  auto halve = [&n](BigInt& x) {
    if (mpz_odd_p(x.get_mpz_t())) x += n;
    mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
  };
  long top = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1;
  for (long bit = top - 1; bit >= 0; --bit) {
    u *= v;
    reduce(u);
    v = v * v - 2 * qk;
    reduce(v);
    qk *= qk;
    reduce(qk);
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
      tmp = u + v;
      halve(tmp);
      v = dm * u + v;
      reduce(v);
      halve(v);
      u = tmp;
      reduce(u);
      qk *= qm;
      reduce(qk);
    }
  }
  if (sgn(u) == 0 || sgn(v) == 0) return true;
  for (decltype(s) r = 1; r < s; ++r) {
    v = v * v - 2 * qk;
    reduce(v);
    if (sgn(v) == 0) return true;
    qk *= qk;
    reduce(qk);
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kWitnessBases) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  for (std::uint64_t base : kWitnessBases) {
    if (!strong_probable_prime(n, base)) return false;
  }
  return strong_lucas_probable_prime(n);
}

bool is_prime(const BigInt& n) {
  if (fits_u64(n)) return is_prime(to_u64(n));
  for (std::uint64_t p : kWitnessBases) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  for (std::uint64_t base : kWitnessBases) {
    if (!strong_probable_prime(n, base)) return false;
  }
  return strong_lucas_probable_prime(n);
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace euclid::arith
