#ifndef HIWSIGN_FUZZ_HPP
#define HIWSIGN_FUZZ_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hiwsign/arith.hpp"
#include "hiwsign/genfun.hpp"
#include "hiwsign/hecke.hpp"
#include "hiwsign/rational.hpp"
#include "hiwsign/signscan.hpp"

namespace hiwsign {

/// Local parameters of one twisted sequence: k, p, trace, chi_1(p), a(t).
struct LocalInstance {
  int k;
  std::int64_t p;
  Rational trace;
  int chi1_p;
  Rational a_t;
};

/// Seeded draws with k in [2, 8], p <= 50 prime, trace^2 <= 4 p^{2k-1},
/// chi_1(p) in {-1, 0, 1} and a nonzero rational a(t).
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  LocalInstance next() {
    static const std::vector<std::int64_t> primes = primes_up_to(50);
    LocalInstance out;
    out.k = static_cast<int>(uniform(2, 8));
    out.p = primes[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(primes.size()) - 1))];
    out.chi1_p = static_cast<int>(uniform(-1, 1));

    std::int64_t num = 0;
    while (num == 0) num = uniform(-1000, 1000);
    out.a_t = Rational(num, uniform(1, 100));
    out.a_t.canonicalize();

    // |num/den| <= 2 p^{k - 1/2}  <=>  num^2 <= 4 p^{2k-1} den^2
    const std::int64_t den = uniform(1, 50);
    const Integer squared_bound = 4 * ipow(out.p, static_cast<unsigned long>(2 * out.k - 1)) * den * den;
    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), squared_bound.get_mpz_t());
    out.trace = Rational(uniform_big(-bound, bound), den);
    out.trace.canonicalize();
    return out;
  }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

 private:
  // Uniform enough on [lo, hi] for test draws: scales a 128-bit draw.
  Integer uniform_big(const Integer& lo, const Integer& hi) {
    Integer draw = 0;
    for (int i = 0; i < 2; ++i) {
      draw <<= 64;
      draw += Integer(std::to_string(rng_()));
    }
    const Integer width = hi - lo + 1;
    Integer scaled = draw * width;
    scaled >>= 128;
    return lo + scaled;
  }

  std::mt19937_64 rng_;
};

struct IdentityCheck {
  LocalInstance instance;
  bool closed_form_matches = false;  // expand(H_1) == recurrence
  bool split_identity = false;       // S0 + S1 == H_1 as polynomials
  bool parity_support = false;       // S0 even-supported, S1 odd-supported
  bool split_matches = false;        // S0/S1 coefficients == parity-filtered recurrence

  bool passed() const { return closed_form_matches && split_identity && parity_support && split_matches; }
};

inline IdentityCheck check_identities(const LocalInstance& in, std::size_t terms) {
  IdentityCheck out{in};
  const auto seq = twisted_sequence(in.a_t, in.trace, in.chi1_p, in.p, in.k, terms);
  const RationalGF h1 = h_n_closed(in.a_t, in.trace, in.chi1_p, in.p, in.k);
  out.closed_form_matches = expand(h1, terms) == seq;

  const Rational a_tp2_twisted = seq.size() > 1
                                     ? seq[1]
                                     : (in.trace - in.chi1_p * Rational(ipow(in.p, in.k - 1))) * in.a_t;
  const auto split = s_split_closed(in.a_t, a_tp2_twisted, in.trace, in.chi1_p, in.p, in.k);
  out.split_identity = split_identity_holds(split, h1);

  const auto s0 = expand(split.s0(), terms);
  const auto s1 = expand(split.s1(), terms);
  out.parity_support = true;
  out.split_matches = true;
  for (std::size_t m = 0; m <= terms; ++m) {
    const bool even = m % 2 == 0;
    if ((even ? s1[m] : s0[m]) != 0) out.parity_support = false;
    if ((even ? s0[m] : s1[m]) != seq[m]) out.split_matches = false;
  }
  return out;
}

}  // namespace hiwsign

#endif  // HIWSIGN_FUZZ_HPP
