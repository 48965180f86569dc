#ifndef HIWSIGN_SHIMURA_HPP
#define HIWSIGN_SHIMURA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hiwsign/arith.hpp"
#include "hiwsign/error.hpp"
#include "hiwsign/forms.hpp"
#include "hiwsign/hecke.hpp"
#include "hiwsign/qseries.hpp"
#include "hiwsign/rational.hpp"
#include "hiwsign/twist.hpp"

namespace hiwsign {

/// Coefficients A_t(1..n_max) of the t-th Shimura lift.
struct LiftSeries {
  std::int64_t t;
  std::vector<Rational> values;  // values[n - 1] = A_t(n)

  const Rational& at(std::int64_t n) const {
    if (n < 1 || n > static_cast<std::int64_t>(values.size())) {
      throw Error(Errc::OutOfRange, "A_t(" + std::to_string(n) + ") not computed");
    }
    return values[static_cast<std::size_t>(n - 1)];
  }
};

/// A_t(n) = sum_{d | n} chi_{t,N}(d) d^{k-1} a(t (n/d)^2).
inline LiftSeries lift_coefficients(const HalfIntegralForm& form, std::int64_t t, std::int64_t n_max) {
  if (n_max < 1) throw Error(Errc::OutOfRange, "n_max must be positive");
  const __int128 top = static_cast<__int128>(t) * n_max * n_max;
  if (top > form.prec()) {
    throw Error(Errc::PrecisionExceeded, "t*n_max^2 beyond precision " + std::to_string(form.prec()));
  }
  const TwistCharacters twist(form, t);
  const auto k1 = static_cast<unsigned long>(form.k() - 1);

  LiftSeries out{t, {}};
  out.values.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    Rational acc = 0;
    for (std::int64_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      const int c = twist.chi_tN(d);
      if (c == 0) continue;
      const std::int64_t e = n / d;
      acc += c * ipow(d, k1) * form.a(t * e * e);
    }
    out.values.push_back(acc);
  }
  return out;
}

struct LiftCheckRow {
  std::int64_t p;
  Rational lift_ratio;  // A_t(p) / a(t)
  Rational integral;    // B(p)
  Rational hecke;       // extract_trace * chi(p)
  bool ok;
};

struct LiftCheckReport {
  std::int64_t t;
  std::vector<LiftCheckRow> rows;

  std::vector<std::int64_t> mismatches() const {
    std::vector<std::int64_t> out;
    for (const auto& r : rows) {
      if (!r.ok) out.push_back(r.p);
    }
    return out;
  }
  bool passed() const { return mismatches().empty(); }
};

/// Compares the normalized lift coefficient A_t(p)/a(t) with the p-th
/// coefficient of a normalized integral-weight eigenform, and with the Hecke
/// eigenvalue read off the half-integral form, for primes p <= p_max, p not
/// dividing the level.
inline LiftCheckReport crosscheck_lift(const HalfIntegralForm& form, std::int64_t t,
                                       const TruncatedSeries& integral_coeffs, std::int64_t p_max) {
  if (!is_squarefree(t)) throw Error(Errc::NotSquarefree, std::to_string(t) + " is not squarefree");
  const Rational& at = form.a(t);
  if (at == 0) throw Error(Errc::ZeroBase, "a(" + std::to_string(t) + ") = 0");
  if (static_cast<std::int64_t>(integral_coeffs.prec()) < p_max) {
    throw Error(Errc::MissingCoefficient,
                "integral-weight coefficients end at " + std::to_string(integral_coeffs.prec()));
  }
  const LiftSeries lift = lift_coefficients(form, t, p_max);
  LiftCheckReport report{t, {}};
  for (std::int64_t p : primes_up_to(p_max)) {
    if (form.level() % p == 0) continue;
    LiftCheckRow row{p, lift.at(p) / at, integral_coeffs[static_cast<std::size_t>(p)],
                     extract_trace(form, t, p) * form.chi(p), false};
    row.ok = row.lift_ratio == row.integral && row.lift_ratio == row.hecke;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace hiwsign

#endif  // HIWSIGN_SHIMURA_HPP
