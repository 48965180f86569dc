#ifndef HIWSIGN_HECKE_HPP
#define HIWSIGN_HECKE_HPP

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "hiwsign/arith.hpp"
#include "hiwsign/error.hpp"
#include "hiwsign/forms.hpp"
#include "hiwsign/rational.hpp"
#include "hiwsign/twist.hpp"

namespace hiwsign {

enum class RootKind { real_distinct, real_double, complex_pair };
enum class DeligneStatus { strict, extremal, violated };

inline std::string_view to_string(RootKind kind) {
  switch (kind) {
    case RootKind::real_distinct: return "real_distinct";
    case RootKind::real_double: return "real_double";
    case RootKind::complex_pair: return "complex_pair";
  }
  return "?";
}

inline std::string_view to_string(DeligneStatus status) {
  switch (status) {
    case DeligneStatus::strict: return "strict";
    case DeligneStatus::extremal: return "extremal";
    case DeligneStatus::violated: return "violated";
  }
  return "?";
}

/// Local data of the characteristic polynomial 1 - trace X + norm X^2 at p.
/// The Satake roots alpha, beta = (trace +- sqrt(disc)) / 2 are never formed;
/// everything downstream works with (trace, norm).
struct HeckeLocalData {
  std::int64_t p;
  Rational trace;  // lambda_p / chi(p)
  Rational norm;   // p^{2k-1}
  Rational disc;   // trace^2 - 4 norm
  RootKind root_kind;

  /// alpha*beta recovered from (trace, disc) alone.
  Rational root_product() const { return (trace * trace - disc) / 4; }
  const Rational& root_sum() const noexcept { return trace; }
};

inline Rational hecke_norm(std::int64_t p, int k) { return Rational(ipow(p, static_cast<unsigned long>(2 * k - 1))); }

inline HeckeLocalData satake_data(const Rational& trace, std::int64_t p, int k) {
  if (k < 2) throw Error(Errc::InvalidArgument, "k must be at least 2");
  HeckeLocalData out{p, trace, hecke_norm(p, k), 0, RootKind::complex_pair};
  out.disc = trace * trace - 4 * out.norm;
  const int s = sign(out.disc);
  out.root_kind = s > 0 ? RootKind::real_distinct : (s == 0 ? RootKind::real_double : RootKind::complex_pair);
  return out;
}

inline DeligneStatus deligne_check(const Rational& trace, std::int64_t p, int k) {
  const int c = cmp(trace * trace, 4 * hecke_norm(p, k));
  return c < 0 ? DeligneStatus::strict : (c == 0 ? DeligneStatus::extremal : DeligneStatus::violated);
}

namespace detail {

inline int require_unit_prime(const HalfIntegralForm& form, std::int64_t p) {
  if (!is_prime(p)) throw Error(Errc::InvalidArgument, std::to_string(p) + " is not prime");
  const int chi_p = form.chi(p);
  if (chi_p == 0 || form.level() % p == 0) {
    throw Error(Errc::NotCoprime, "p = " + std::to_string(p) + " divides the level");
  }
  return chi_p;
}

// t * p^{2m}, or -1 on overflow.
inline std::int64_t scaled_index(std::int64_t t, std::int64_t p, int m) {
  __int128 n = t;
  for (int i = 0; i < 2 * m; ++i) {
    n *= p;
    if (n > (static_cast<__int128>(1) << 62)) return -1;
  }
  return static_cast<std::int64_t>(n);
}

inline const Rational& a_at(const HalfIntegralForm& form, std::int64_t t, std::int64_t p, int m) {
  const std::int64_t n = scaled_index(t, p, m);
  if (n < 0 || !form.within(n)) {
    throw Error(Errc::PrecisionExceeded,
                "a(" + std::to_string(t) + "*" + std::to_string(p) + "^" + std::to_string(2 * m) +
                    ") beyond precision " + std::to_string(form.prec()));
  }
  return form.a(n);
}

inline int chi_power(int chi_p, int m) { return (chi_p == -1 && m % 2 == 1) ? -1 : 1; }

}  // namespace detail

/// lambda_p / chi(p), read off the first Hecke relation at the base index t0.
inline Rational extract_trace(const HalfIntegralForm& form, std::int64_t t0, std::int64_t p) {
  const int chi_p = detail::require_unit_prime(form, p);
  if (!is_squarefree(t0)) throw Error(Errc::NotSquarefree, std::to_string(t0) + " is not squarefree");
  const Rational& base = form.a(t0);
  if (base == 0) throw Error(Errc::ZeroBase, "a(" + std::to_string(t0) + ") = 0");
  const Rational& lifted = detail::a_at(form, t0, p, 1);
  const int chi1_p = TwistCharacters(form, t0).chi1(p);
  return lifted * chi_p / base + Rational(chi1_p * ipow(p, static_cast<unsigned long>(form.k() - 1)));
}

struct Residual {
  std::int64_t t;
  int m;  // 0 for the base relation
  Rational value;
};

struct ResidualReport {
  std::int64_t p;
  Rational trace;
  std::vector<Residual> residuals;

  bool consistent() const {
    return std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.value == 0; });
  }

  std::vector<Residual> failures() const {
    std::vector<Residual> out;
    std::copy_if(residuals.begin(), residuals.end(), std::back_inserter(out),
                 [](const Residual& r) { return r.value != 0; });
    return out;
  }
};

/// Evaluates both Hecke relations on every t in `t_set` for m = 0..m_max.
/// m = 0 is the base relation
///   trace a(t) = a(t p^2)/chi(p) + chi_1(p) p^{k-1} a(t),
/// m >= 1 the three-term relation on the twisted sequence a(t p^{2m}) / chi(p^m).
inline ResidualReport eigen_consistency(const HalfIntegralForm& form, std::int64_t p, const Rational& trace,
                                        const std::vector<std::int64_t>& t_set, int m_max) {
  const int chi_p = detail::require_unit_prime(form, p);
  const Rational norm = hecke_norm(p, form.k());
  const Integer pk1 = ipow(p, static_cast<unsigned long>(form.k() - 1));
  ResidualReport report{p, trace, {}};

  for (std::int64_t t : t_set) {
    auto twisted = [&](int m) { return detail::a_at(form, t, p, m) * detail::chi_power(chi_p, m); };
    const int chi1_p = TwistCharacters(form, t).chi1(p);
    const Rational& at = form.a(t);
    report.residuals.push_back({t, 0, trace * at - twisted(1) - chi1_p * pk1 * at});
    for (int m = 1; m <= m_max; ++m) {
      report.residuals.push_back({t, m, trace * twisted(m) - twisted(m + 1) - norm * twisted(m - 1)});
    }
  }
  return report;
}

/// Largest m <= cap such that the relations up to m stay within precision,
/// or -1 when even the base relation does not fit.
inline int max_relation_depth(const HalfIntegralForm& form, std::int64_t t, std::int64_t p, int cap) {
  int m = -1;
  while (m < cap) {
    const std::int64_t n = detail::scaled_index(t, p, m + 2);
    if (n < 0 || !form.within(n)) break;
    ++m;
  }
  return m;
}

/// a(t m^2) a(t n^2) - a(t) a(t m^2 n^2); zero for an eigenform.
inline Rational multiplicativity_check(const HalfIntegralForm& form, std::int64_t t, std::int64_t m, std::int64_t n) {
  if (std::gcd(m, n) != 1) {
    throw Error(Errc::NotCoprime, "gcd(" + std::to_string(m) + ", " + std::to_string(n) + ") > 1");
  }
  return coefficient(form, t, m) * coefficient(form, t, n) - coefficient(form, t, 1) * coefficient(form, t, m * n);
}

}  // namespace hiwsign

#endif  // HIWSIGN_HECKE_HPP
