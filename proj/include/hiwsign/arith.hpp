#ifndef HIWSIGN_ARITH_HPP
#define HIWSIGN_ARITH_HPP

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "hiwsign/error.hpp"
#include "hiwsign/rational.hpp"

namespace hiwsign {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  if (n < 0) n = -n;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_squarefree(std::int64_t n) {
  if (n < 1) return false;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return false;
  }
  return true;
}

struct SquarefreeSplit {
  std::int64_t t;  // squarefree part
  std::int64_t m;  // n = t * m^2

  bool operator==(const SquarefreeSplit&) const = default;
};

inline SquarefreeSplit squarefree_decompose(std::int64_t n) {
  if (n < 1) throw Error(Errc::OutOfRange, "squarefree_decompose needs n >= 1");
  SquarefreeSplit out{1, 1};
  for (auto [p, e] : factorize(n)) {
    for (int i = 0; i < e / 2; ++i) out.m *= p;
    if (e % 2 == 1) out.t *= p;
  }
  return out;
}

inline std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  std::int64_t result = 1 % mod;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::int64_t>(static_cast<__int128>(result) * base % mod);
    base = static_cast<std::int64_t>(static_cast<__int128>(base) * base % mod);
    exp >>= 1;
  }
  return result;
}

/// Kronecker symbol (a | n), extending the Jacobi symbol to all integers n
/// with (a | -1) = sign(a), (a | 2) from a mod 8, and (a | 0) = [a = +-1].
inline int kronecker(const Integer& a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (mpz_even_p(a.get_mpz_t())) return 0;
    const unsigned long r8 = mpz_fdiv_ui(a.get_mpz_t(), 8);
    if ((r8 == 3 || r8 == 5) && (twos % 2 == 1)) result = -result;
  }
  if (n == 1) return result;

  // Jacobi symbol for odd n > 1.
  std::int64_t x = static_cast<std::int64_t>(mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(n)));
  std::int64_t m = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const std::int64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

}  // namespace hiwsign

#endif  // HIWSIGN_ARITH_HPP
