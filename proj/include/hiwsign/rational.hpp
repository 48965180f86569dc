#ifndef HIWSIGN_RATIONAL_HPP
#define HIWSIGN_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "hiwsign/error.hpp"

namespace hiwsign {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sign(const Rational& x) { return sgn(x); }
inline int sign(const Integer& x) { return sgn(x); }

inline Integer ipow(long base, unsigned long exp) {
  Integer out;
  Integer b = base;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), exp);
  return out;
}

inline Rational rpow(const Rational& base, unsigned long exp) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exp);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

/// Parses "n" or "n/d" with an optional leading '-' on the numerator.
/// Whitespace, '+' signs, and zero denominators are rejected.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return Error(Errc::ParseError, "malformed rational '" + std::string(text) + "'"); };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  std::string_view num_digits = (!num.empty() && num.front() == '-') ? num.substr(1) : num;
  if (!detail::all_digits(num_digits)) throw fail();
  if (slash != std::string_view::npos && !detail::all_digits(den)) throw fail();

  Integer n(std::string(num), 10);
  if (slash == std::string_view::npos) return Rational(n);
  Integer d(std::string(den), 10);
  if (d == 0) throw fail();
  Rational out(n, d);
  out.canonicalize();
  return out;
}

/// Canonical "num/den" form; the denominator is omitted when it is 1.
inline std::string format_rational(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace hiwsign

#endif  // HIWSIGN_RATIONAL_HPP
