#include "euclid/arith.hpp"

#include <stdexcept>
#include <string>

namespace euclid::arith {

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  // extended Euclid on signed 128-bit to avoid overflow at the top of the range
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 quot = old_r / r;
    __int128 tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("inv_mod: argument not invertible");
  old_s %= static_cast<__int128>(m);
  if (old_s < 0) old_s += m;
  return static_cast<std::uint64_t>(old_s);
}

int jacobi(const BigInt& a_in, const BigInt& m_in) {
  if (sgn(m_in) <= 0 || mpz_even_p(m_in.get_mpz_t())) {
    throw std::invalid_argument("jacobi: modulus must be odd and positive, got " + to_decimal(m_in));
  }
  BigInt m = m_in;
  BigInt a;
  mpz_fdiv_r(a.get_mpz_t(), a_in.get_mpz_t(), m.get_mpz_t());
  int t = 1;
  while (sgn(a) != 0) {
    auto twos = mpz_scan1(a.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), twos);
    unsigned m8 = mpz_fdiv_ui(m.get_mpz_t(), 8);
    if ((twos & 1) && (m8 == 3 || m8 == 5)) t = -t;
    swap(a, m);
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(m.get_mpz_t(), 4) == 3) t = -t;
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  }
  return m == 1 ? t : 0;
}

int jacobi(std::int64_t a_in, std::uint64_t m) {
  if (m == 0 || (m & 1) == 0) {
    throw std::invalid_argument("jacobi: modulus must be odd and positive, got " + std::to_string(m));
  }
  std::uint64_t a;
  if (a_in >= 0) {
    a = static_cast<std::uint64_t>(a_in) % m;
  } else {
    // -(a_in) may not fit int64 at the bottom of the range
    std::uint64_t mag = static_cast<std::uint64_t>(-(a_in + 1)) + 1;
    a = (m - mag % m) % m;
  }
  int t = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      std::uint64_t m8 = m & 7;
      if (m8 == 3 || m8 == 5) t = -t;
    }
    std::swap(a, m);
    if ((a & 3) == 3 && (m & 3) == 3) t = -t;
    a %= m;
  }
  return m == 1 ? t : 0;
}

std::optional<std::uint64_t> mod_sqrt(std::uint64_t a, std::uint64_t q) {
  if (q < 3 || !is_prime(q)) {
    throw std::invalid_argument("mod_sqrt: modulus must be an odd prime, got " + std::to_string(q));
  }
  if (a >= q) throw std::invalid_argument("mod_sqrt: residue out of range");
  if (a == 0) return 0;
  if (pow_mod(a, (q - 1) / 2, q) != 1) return std::nullopt;

  std::uint64_t root;
  if ((q & 3) == 3) {
    root = pow_mod(a, (q + 1) / 4, q);
  } else {
    // Tonelli-Shanks: q - 1 = odd * 2^s
    std::uint64_t odd = q - 1;
    unsigned s = 0;
    while ((odd & 1) == 0) {
      odd >>= 1;
      ++s;
    }
    std::uint64_t z = 2;
    while (pow_mod(z, (q - 1) / 2, q) != q - 1) ++z;
    std::uint64_t c = pow_mod(z, odd, q);
    std::uint64_t t = pow_mod(a, odd, q);
    root = pow_mod(a, (odd + 1) / 2, q);
    unsigned m = s;
    while (t != 1) {
      unsigned i = 0;
      std::uint64_t t2 = t;
      while (t2 != 1) {
        t2 = mul_mod(t2, t2, q);
        ++i;
      }
      std::uint64_t b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, q);
      m = i;
      c = mul_mod(b, b, q);
      t = mul_mod(t, c, q);
      root = mul_mod(root, b, q);
    }
  }
  return std::min(root, q - root);
}

}  // namespace euclid::arith
