#ifndef HIWSIGN_GENFUN_HPP
#define HIWSIGN_GENFUN_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "hiwsign/error.hpp"
#include "hiwsign/hecke.hpp"
#include "hiwsign/polynomial.hpp"
#include "hiwsign/rational.hpp"

namespace hiwsign {

/// num(X) / den(X), kept in lowest terms. When den(0) != 0 the pair is
/// scaled so that den(0) = 1.
class RationalGF {
 public:
  RationalGF(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw Error(Errc::ZeroPolynomial, "zero denominator");
    const Polynomial g = gcd(num, den);
    num_ = divmod(num, g).quotient;
    den_ = divmod(den, g).quotient;
    const Rational d0 = den_[0];
    const Rational scale = d0 != 0 ? Rational(1) / d0 : Rational(1) / den_.leading();
    num_ *= scale;
    den_ *= scale;
  }

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  bool expandable() const { return den_[0] != 0; }

  Rational operator()(const Rational& x) const { return num_(x) / den_(x); }

  bool operator==(const RationalGF&) const = default;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// First M+1 power-series coefficients of gf at X = 0.
inline std::vector<Rational> expand(const RationalGF& gf, std::size_t M) {
  if (!gf.expandable()) throw Error(Errc::NotExpandable, "denominator vanishes at X = 0");
  const auto& den = gf.den().coeffs();
  const Rational inv0 = Rational(1) / den[0];
  std::vector<Rational> c(M + 1);
  for (std::size_t m = 0; m <= M; ++m) {
    Rational acc = gf.num()[m];
    for (std::size_t i = 1; i < den.size() && i <= m; ++i) acc -= den[i] * c[m - i];
    c[m] = acc * inv0;
  }
  return c;
}

/// 1 - trace X + p^{2k-1} X^2.
inline Polynomial hecke_denominator(const Rational& trace, std::int64_t p, int k) {
  return Polynomial{Rational(1), -trace, hecke_norm(p, k)};
}

/// Generating function of the twisted sequence a(t p^{2m} n^2) / chi(p^m n):
///   lead (1 - chi_1(p) p^{k-1} X) / (1 - trace X + p^{2k-1} X^2).
inline RationalGF h_n_closed(const Rational& lead, const Rational& trace, int chi1_p, std::int64_t p, int k) {
  const Rational pk1(ipow(p, static_cast<unsigned long>(k - 1)));
  Polynomial num{lead, -lead * chi1_p * pk1};
  return RationalGF(std::move(num), hecke_denominator(trace, p, k));
}

/// Even- and odd-index parts S0, S1 of H_1 over the common quartic
/// denominator (1 - trace X + norm X^2)(1 + trace X + norm X^2).
struct SplitClosedForms {
  Polynomial s0_num;
  Polynomial s1_num;
  Polynomial common_den;

  RationalGF s0() const { return RationalGF(s0_num, common_den); }
  RationalGF s1() const { return RationalGF(s1_num, common_den); }
};

/// a_tp2_twisted = a(t p^2) / chi(p).
inline SplitClosedForms s_split_closed(const Rational& a_t, const Rational& a_tp2_twisted, const Rational& trace,
                                       int chi1_p, std::int64_t p, int k) {
  const Rational norm = hecke_norm(p, k);
  const Rational pk1(ipow(p, static_cast<unsigned long>(k - 1)));
  const Rational p3k2(ipow(p, static_cast<unsigned long>(3 * k - 2)));
  SplitClosedForms out;
  out.common_den = hecke_denominator(trace, p, k) * hecke_denominator(-trace, p, k);
  out.s1_num = Polynomial{Rational(0), a_tp2_twisted, Rational(0), -a_t * chi1_p * p3k2};
  out.s0_num = Polynomial{a_t, Rational(0), a_t * (norm - trace * chi1_p * pk1)};
  return out;
}

/// S0 + S1 == H1, checked as num(S0+S1) * den(H1) == num(H1) * den(S0+S1).
inline bool split_identity_holds(const SplitClosedForms& split, const RationalGF& h1) {
  return (split.s0_num + split.s1_num) * h1.den() == h1.num() * split.common_den;
}

/// Lucas sequence u_j = (alpha^j - beta^j)/(alpha - beta) for the roots of
/// X^2 - trace X + norm, returned for j = 0..count-1.
inline std::vector<Rational> lucas_sequence(const Rational& trace, const Rational& norm, std::size_t count) {
  std::vector<Rational> u(count);
  if (count > 1) u[1] = 1;
  for (std::size_t j = 2; j < count; ++j) u[j] = trace * u[j - 1] - norm * u[j - 2];
  return u;
}

/// Q(X) with (beta alpha^m - alpha beta^m) X^m + (beta^m - alpha^m) X^{m-1}
/// + (alpha - beta) = (alpha - beta) Q(X); Q has rational coefficients.
inline Polynomial remark_polynomial(const HeckeLocalData& local, int m_p) {
  if (m_p < 1) throw Error(Errc::OutOfRange, "m_p must be at least 1");
  const auto m = static_cast<std::size_t>(m_p);
  const auto u = lucas_sequence(local.trace, local.norm, m + 1);
  std::vector<Rational> c(m + 1);
  c[m] += local.norm * u[m - 1];
  c[m - 1] -= u[m];
  c[0] += 1;
  return Polynomial(std::move(c));
}

}  // namespace hiwsign

#endif  // HIWSIGN_GENFUN_HPP
