#ifndef HIWSIGN_POLYNOMIAL_HPP
#define HIWSIGN_POLYNOMIAL_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "hiwsign/error.hpp"
#include "hiwsign/rational.hpp"

namespace hiwsign {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return Polynomial(std::move(v));
  }

  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree, with -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(v));
  }

  /// p(scale * X).
  Polynomial rescaled(const Rational& scale) const {
    std::vector<Rational> v(c_);
    Rational power = 1;
    for (auto& c : v) {
      c *= power;
      power *= scale;
    }
    return Polynomial(std::move(v));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }

  Polynomial& operator*=(const Rational& s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(v));
  }

  bool operator==(const Polynomial&) const = default;

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + format_rational(c_[i]) + ")";
      if (i > 0) out += "*X^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

struct PolyDivision {
  Polynomial quotient;
  Polynomial remainder;
};

inline PolyDivision divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw Error(Errc::ZeroPolynomial, "division by the zero polynomial");
  std::vector<Rational> r = num.coeffs();
  const long dd = den.degree();
  const Rational lead = den.leading();
  if (num.degree() < dd) return {Polynomial{}, num};
  std::vector<Rational> q(static_cast<std::size_t>(num.degree() - dd + 1));
  for (long i = num.degree(); i >= dd; --i) {
    const Rational factor = r[static_cast<std::size_t>(i)] / lead;
    q[static_cast<std::size_t>(i - dd)] = factor;
    if (factor == 0) continue;
    for (long j = 0; j <= dd; ++j) r[static_cast<std::size_t>(i - dd + j)] -= factor * den[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(dd));
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

/// Scales p by a positive rational so its coefficients are coprime integers.
/// Signs are preserved, which Sturm sequences rely on.
inline Polynomial primitive_part(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den_lcm = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer content = 0;
  for (const auto& c : p.coeffs()) {
    const Integer v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  return p * Rational(den_lcm, content);
}

inline Polynomial make_monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / p.leading());
}

/// Monic gcd through a content-normalized remainder sequence: every
/// remainder is replaced by its primitive part to bound coefficient growth.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  a = primitive_part(a);
  b = primitive_part(b);
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).remainder;
    a = std::move(b);
    b = primitive_part(r);
  }
  return make_monic(a);
}

inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "squarefree part of 0");
  const Polynomial g = gcd(p, p.derivative());
  return primitive_part(divmod(p, g).quotient);
}

inline std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    const Polynomial& a = seq[seq.size() - 2];
    const Polynomial& b = seq.back();
    Polynomial r = divmod(a, b).remainder;
    seq.push_back(primitive_part(-r));
  }
  seq.pop_back();
  return seq;
}

namespace detail {

inline int variations(const std::vector<int>& signs) {
  int count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace detail

/// Number of distinct real roots of a nonzero polynomial.
inline int real_root_count(const Polynomial& poly) {
  if (poly.is_zero()) throw Error(Errc::ZeroPolynomial, "real_root_count of the zero polynomial");
  const auto seq = sturm_sequence(squarefree_part(poly));
  std::vector<int> at_neg, at_pos;
  for (const auto& s : seq) {
    const int lead = sign(s.leading());
    at_pos.push_back(lead);
    at_neg.push_back(s.degree() % 2 == 0 ? lead : -lead);
  }
  return detail::variations(at_neg) - detail::variations(at_pos);
}

}  // namespace hiwsign

#endif  // HIWSIGN_POLYNOMIAL_HPP
