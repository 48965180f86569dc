#ifndef HIWSIGN_QSERIES_HPP
#define HIWSIGN_QSERIES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hiwsign/error.hpp"
#include "hiwsign/rational.hpp"

namespace hiwsign {

/// Exact power series c_0 + c_1 q + ... + c_prec q^prec. Coefficients beyond
/// `prec` are unknown, and asking for one is an error rather than a silent 0.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t prec) : coeffs_(prec + 1) {}

  explicit TruncatedSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(Errc::InvalidArgument, "series needs at least one coefficient");
  }

  static TruncatedSeries constant(const Rational& c, std::size_t prec) {
    TruncatedSeries out(prec);
    out.coeffs_[0] = c;
    return out;
  }

  std::size_t prec() const noexcept { return coeffs_.size() - 1; }

  const Rational& operator[](std::size_t n) const {
    if (n > prec()) {
      throw Error(Errc::PrecisionExceeded,
                  "coefficient q^" + std::to_string(n) + " beyond precision " + std::to_string(prec()));
    }
    return coeffs_[n];
  }

  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  TruncatedSeries truncated(std::size_t prec) const {
    if (prec > this->prec()) {
      throw Error(Errc::PrecisionExceeded, "cannot extend a series beyond its precision");
    }
    return TruncatedSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + prec + 1));
  }

  /// q^shift times this series, keeping the result's precision at `prec`.
  TruncatedSeries shifted(std::size_t shift, std::size_t prec) const {
    TruncatedSeries out(prec);
    for (std::size_t n = shift; n <= prec; ++n) out.coeffs_[n] = (*this)[n - shift];
    return out;
  }

  bool operator==(const TruncatedSeries& other) const { return coeffs_ == other.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

namespace detail {

// Integer image of a series: c_n = ints[n] / den with den the lcm of the
// coefficient denominators. Also returns the indices of nonzero entries.
struct IntegerImage {
  std::vector<Integer> ints;
  Integer den = 1;
  std::vector<std::size_t> support;
};

inline IntegerImage integer_image(const TruncatedSeries& s, std::size_t prec) {
  IntegerImage out;
  out.ints.resize(prec + 1);
  for (std::size_t n = 0; n <= prec; ++n) {
    mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), s[n].get_den_mpz_t());
  }
  for (std::size_t n = 0; n <= prec; ++n) {
    const Rational& c = s[n];
    if (c == 0) continue;
    out.ints[n] = c.get_num() * (out.den / c.get_den());
    out.support.push_back(n);
  }
  return out;
}

}  // namespace detail

/// Cauchy product truncated at min(a.prec(), b.prec()). Zero coefficients are
/// skipped, so sparse factors (theta, pentagonal series) stay cheap.
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t prec = std::min(a.prec(), b.prec());
  const auto ia = detail::integer_image(a, prec);
  const auto ib = detail::integer_image(b, prec);
  std::vector<Integer> acc(prec + 1);
  for (std::size_t i : ia.support) {
    for (std::size_t j : ib.support) {
      if (i + j > prec) break;
      mpz_addmul(acc[i + j].get_mpz_t(), ia.ints[i].get_mpz_t(), ib.ints[j].get_mpz_t());
    }
  }
  const Integer den = ia.den * ib.den;
  std::vector<Rational> out(prec + 1);
  for (std::size_t n = 0; n <= prec; ++n) {
    if (acc[n] == 0) continue;
    out[n] = Rational(acc[n], den);
    out[n].canonicalize();
  }
  return TruncatedSeries(std::move(out));
}

inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return series_mul(a, b); }

/// Multiplicative inverse; requires a nonzero constant term.
inline TruncatedSeries series_inverse(const TruncatedSeries& s) {
  if (s[0] == 0) throw Error(Errc::NotExpandable, "series with zero constant term has no inverse");
  const std::size_t prec = s.prec();
  std::vector<Rational> out(prec + 1);
  const Rational inv0 = 1 / s[0];
  out[0] = inv0;
  for (std::size_t n = 1; n <= prec; ++n) {
    Rational acc = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (s[i] != 0) acc += s[i] * out[n - i];
    }
    out[n] = -acc * inv0;
  }
  return TruncatedSeries(std::move(out));
}

inline TruncatedSeries series_pow(TruncatedSeries base, std::uint64_t exp) {
  TruncatedSeries result = TruncatedSeries::constant(1, base.prec());
  while (exp > 0) {
    if (exp & 1) result = series_mul(result, base);
    exp >>= 1;
    if (exp > 0) base = series_mul(base, base);
  }
  return result;
}

/// prod_{n>=1} (1 - q^{d n}) up to q^prec, from Euler's pentagonal number theorem.
inline TruncatedSeries euler_product(std::int64_t d, std::size_t prec) {
  if (d < 1) throw Error(Errc::InvalidArgument, "eta scale must be positive");
  std::vector<Rational> c(prec + 1);
  c[0] = 1;
  const auto limit = static_cast<std::int64_t>(prec);
  for (std::int64_t k = 1;; ++k) {
    const std::int64_t g1 = d * (k * (3 * k - 1) / 2);
    const std::int64_t g2 = d * (k * (3 * k + 1) / 2);
    if (g1 > limit) break;
    const int s = (k % 2 == 0) ? 1 : -1;
    c[static_cast<std::size_t>(g1)] += s;
    if (g2 <= limit) c[static_cast<std::size_t>(g2)] += s;
  }
  return TruncatedSeries(std::move(c));
}

/// prod_{n>=1} (1 - q^{d n})^r for any integer r.
inline TruncatedSeries euler_product_power(std::int64_t d, std::int64_t r, std::size_t prec) {
  TruncatedSeries base = euler_product(d, prec);
  if (r < 0) base = series_inverse(base);
  return series_pow(std::move(base), static_cast<std::uint64_t>(r < 0 ? -r : r));
}

/// eta(d z)^r = q^{d r / 24} prod (1 - q^{d n})^r up to q^prec.
inline TruncatedSeries eta_power(std::int64_t d, std::int64_t r, std::size_t prec) {
  if (d < 1 || r < 1) throw Error(Errc::InvalidArgument, "eta_power needs d >= 1 and r >= 1");
  if ((d * r) % 24 != 0) {
    throw Error(Errc::NonIntegralOffset,
                "eta(" + std::to_string(d) + "z)^" + std::to_string(r) + " has offset d*r/24 not integral");
  }
  const auto offset = static_cast<std::size_t>(d * r / 24);
  if (offset > prec) return TruncatedSeries(prec);
  return euler_product_power(d, r, prec - offset).shifted(offset, prec);
}

/// 1 + 2 sum_{n>=1} q^{n^2}.
inline TruncatedSeries theta_series(std::size_t prec) {
  std::vector<Rational> c(prec + 1);
  c[0] = 1;
  for (std::size_t n = 1; n * n <= prec; ++n) c[n * n] = 2;
  return TruncatedSeries(std::move(c));
}

struct EtaFactor {
  std::int64_t scale;     // d in eta(d z)
  std::int64_t exponent;  // r, may be negative
};

/// prod eta(d z)^r * theta(z)^theta_power.
struct EtaRecipe {
  std::vector<EtaFactor> factors;
  std::uint32_t theta_power = 0;

  /// sum d*r over the factors; 24 times the leading exponent.
  std::int64_t weighted_offset() const {
    std::int64_t total = 0;
    for (const auto& f : factors) total += f.scale * f.exponent;
    return total;
  }
};

inline TruncatedSeries expand_recipe(const EtaRecipe& recipe, std::size_t prec) {
  const std::int64_t total = recipe.weighted_offset();
  if (total % 24 != 0) {
    throw Error(Errc::NonIntegralOffset, "sum of d*r is " + std::to_string(total) + ", not divisible by 24");
  }
  if (total < 0) throw Error(Errc::InvalidArgument, "recipe has a negative leading exponent");
  for (const auto& f : recipe.factors) {
    if (f.scale < 1) throw Error(Errc::InvalidArgument, "eta scale must be positive");
  }
  const auto offset = static_cast<std::size_t>(total / 24);
  if (offset > prec) return TruncatedSeries(prec);
  const std::size_t inner = prec - offset;

  TruncatedSeries acc = TruncatedSeries::constant(1, inner);
  for (const auto& f : recipe.factors) {
    if (f.exponent == 0) continue;
    acc = series_mul(acc, euler_product_power(f.scale, f.exponent, inner));
  }
  if (recipe.theta_power > 0) acc = series_mul(acc, series_pow(theta_series(inner), recipe.theta_power));
  return acc.shifted(offset, prec);
}

}  // namespace hiwsign

#endif  // HIWSIGN_QSERIES_HPP
