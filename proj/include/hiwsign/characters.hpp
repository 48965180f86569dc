#ifndef HIWSIGN_CHARACTERS_HPP
#define HIWSIGN_CHARACTERS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hiwsign/arith.hpp"
#include "hiwsign/error.hpp"
#include "hiwsign/polynomial.hpp"
#include "hiwsign/rational.hpp"

namespace hiwsign {

// ---------------------------------------------------------------------------
// Exact sums of roots of unity

/// The m-th cyclotomic polynomial.
inline Polynomial cyclotomic_polynomial(std::int64_t m) {
  if (m < 1) throw Error(Errc::OutOfRange, "cyclotomic index must be positive");
  Polynomial acc = Polynomial::monomial(1, static_cast<std::size_t>(m)) - Polynomial{Rational(1)};
  for (std::int64_t d = 1; d < m; ++d) {
    if (m % d == 0) acc = divmod(acc, cyclotomic_polynomial(d)).quotient;
  }
  return acc;
}

/// sum_e counts[e] * zeta_m^e reduced modulo the m-th cyclotomic polynomial.
/// The sum is the rational number c exactly when the result is the constant c.
inline Polynomial reduce_root_sum(const std::vector<Rational>& counts, std::int64_t m) {
  return divmod(Polynomial(counts), cyclotomic_polynomial(m)).remainder;
}

/// Value of a reduced root sum when it is rational.
inline std::optional<Rational> rational_value(const Polynomial& reduced) {
  if (reduced.degree() > 0) return std::nullopt;
  return reduced[0];
}

// ---------------------------------------------------------------------------
// Progressions p^{d + n v} == h (mod q)

inline std::int64_t order_of(std::int64_t p, std::int64_t q) {
  if (p == q) throw Error(Errc::SamePrime, "p = q = " + std::to_string(p));
  if (!is_prime(q)) throw Error(Errc::InvalidArgument, std::to_string(q) + " is not prime");
  if (p % q == 0) throw Error(Errc::NotCoprime, "q divides p");
  std::int64_t x = p % q;
  if (x < 0) x += q;
  std::int64_t n = 1;
  for (std::int64_t y = x; y != 1; y = y * x % q) ++n;
  return n;
}

inline std::int64_t index_of(std::int64_t p, std::int64_t h, std::int64_t q) {
  if (h <= 1 || h >= q) throw Error(Errc::OutOfRange, "h must satisfy 1 < h < q");
  const std::int64_t n = order_of(p, q);
  std::int64_t power = 1;
  for (std::int64_t d = 0; d < n; ++d) {
    if (power == h) return d;
    power = power * (p % q) % q;
  }
  throw Error(Errc::NotInSubgroup,
              std::to_string(h) + " is not a power of " + std::to_string(p) + " mod " + std::to_string(q));
}

struct ProgressionSpec {
  std::int64_t q;
  std::int64_t h;
  std::int64_t p;
  std::int64_t n;  // order of p mod q
  std::int64_t d;  // least d with p^d == h mod q

  static ProgressionSpec make(std::int64_t p, std::int64_t q, std::int64_t h) {
    const std::int64_t d = index_of(p, h, q);
    return ProgressionSpec{q, h, p, order_of(p, q), d};
  }
};

// ---------------------------------------------------------------------------
// Character table modulo a prime

inline std::int64_t smallest_primitive_root(std::int64_t q) {
  if (!is_prime(q)) throw Error(Errc::InvalidArgument, std::to_string(q) + " is not prime");
  if (q == 2) return 1;
  const auto factors = factorize(q - 1);
  for (std::int64_t g = 2; g < q; ++g) {
    bool primitive = true;
    for (auto [r, e] : factors) {
      if (powmod(g, (q - 1) / r, q) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw Error(Errc::InvalidArgument, "no primitive root");
}

/// Dirichlet characters modulo a prime q: eps_j(g^l) = zeta^{j l} with g the
/// smallest primitive root and zeta = exp(2 pi i / (q - 1)). Values are kept
/// as exponents of zeta.
class CharacterTable {
 public:
  explicit CharacterTable(std::int64_t q) : q_(q), generator_(smallest_primitive_root(q)) {
    log_.assign(static_cast<std::size_t>(q), -1);
    std::int64_t x = 1;
    for (std::int64_t l = 0; l < q - 1; ++l) {
      log_[static_cast<std::size_t>(x)] = l;
      x = x * generator_ % q;
    }
  }

  std::int64_t modulus() const noexcept { return q_; }
  std::int64_t generator() const noexcept { return generator_; }
  std::int64_t group_order() const noexcept { return q_ - 1; }
  std::int64_t size() const noexcept { return q_ - 1; }

  std::int64_t log(std::int64_t a) const {
    std::int64_t r = a % q_;
    if (r < 0) r += q_;
    if (r == 0) throw Error(Errc::OutOfRange, "discrete log of a multiple of q");
    return log_[static_cast<std::size_t>(r)];
  }

  /// e with eps_j(a) = zeta^e.
  std::int64_t exponent(std::int64_t j, std::int64_t a) const { return (j % size()) * log(a) % size(); }

  std::complex<double> value(std::int64_t j, std::int64_t a) const {
    if (a % q_ == 0) return 0.0;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(exponent(j, a)) / static_cast<double>(size());
    return std::polar(1.0, angle);
  }

  /// sum_a eps_i(a) conj(eps_j(a)), exactly.
  Polynomial column_sum(std::int64_t i, std::int64_t j) const {
    std::vector<Rational> counts(static_cast<std::size_t>(size()));
    for (std::int64_t a = 1; a < q_; ++a) {
      const std::int64_t e = ((exponent(i, a) - exponent(j, a)) % size() + size()) % size();
      counts[static_cast<std::size_t>(e)] += 1;
    }
    return reduce_root_sum(counts, size());
  }

  /// sum_j eps_j(a) conj(eps_j(b)), exactly.
  Polynomial row_sum(std::int64_t a, std::int64_t b) const {
    std::vector<Rational> counts(static_cast<std::size_t>(size()));
    for (std::int64_t j = 0; j < size(); ++j) {
      const std::int64_t e = ((exponent(j, a) - exponent(j, b)) % size() + size()) % size();
      counts[static_cast<std::size_t>(e)] += 1;
    }
    return reduce_root_sum(counts, size());
  }

 private:
  std::int64_t q_;
  std::int64_t generator_;
  std::vector<std::int64_t> log_;
};

// ---------------------------------------------------------------------------
// Extraction of b_{d + n v}

enum class ExtractionRoute { direct, roots_of_unity, character_sum };

inline std::string_view to_string(ExtractionRoute route) {
  switch (route) {
    case ExtractionRoute::direct: return "direct";
    case ExtractionRoute::roots_of_unity: return "roots_of_unity";
    case ExtractionRoute::character_sum: return "character_sum";
  }
  return "?";
}

namespace detail {

inline void require_length(std::size_t length, const ProgressionSpec& spec) {
  if (length < static_cast<std::size_t>(spec.d) + 1) {
    throw Error(Errc::LengthMismatch,
                "sequence of length " + std::to_string(length) + " has no index d = " + std::to_string(spec.d));
  }
}

// Reads off positions d, d + n, d + 2n, ... of a filtered series, after
// checking that the filter annihilated every other position.
template <typename T, typename IsZero>
std::vector<T> gather_progression(const std::vector<T>& filtered, const ProgressionSpec& spec, IsZero is_zero) {
  std::vector<T> out;
  for (std::size_t m = 0; m < filtered.size(); ++m) {
    const bool on = static_cast<std::int64_t>(m) >= spec.d && (static_cast<std::int64_t>(m) - spec.d) % spec.n == 0;
    if (on) {
      out.push_back(filtered[m]);
    } else if (!is_zero(filtered[m])) {
      throw Error(Errc::InvalidArgument, "filter left a nonzero term off the progression at " + std::to_string(m));
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<Rational> extract_direct(const std::vector<Rational>& seq, const ProgressionSpec& spec) {
  detail::require_length(seq.size(), spec);
  std::vector<Rational> out;
  for (std::size_t m = static_cast<std::size_t>(spec.d); m < seq.size(); m += static_cast<std::size_t>(spec.n)) {
    out.push_back(seq[m]);
  }
  return out;
}

/// Filter weight (1/n) sum_{j<n} zeta_n^{j e}, evaluated by reducing the
/// root sum modulo the n-th cyclotomic polynomial.
inline Rational root_filter_weight(std::int64_t e, std::int64_t n) {
  std::vector<Rational> counts(static_cast<std::size_t>(n));
  const std::int64_t r = ((e % n) + n) % n;
  for (std::int64_t j = 0; j < n; ++j) counts[static_cast<std::size_t>(j * r % n)] += 1;
  const auto value = rational_value(reduce_root_sum(counts, n));
  if (!value) throw Error(Errc::InvalidArgument, "root-of-unity filter did not reduce to a rational");
  return *value / n;
}

inline std::vector<Rational> extract_roots_of_unity(const std::vector<Rational>& seq, const ProgressionSpec& spec) {
  detail::require_length(seq.size(), spec);
  std::vector<Rational> weights(static_cast<std::size_t>(spec.n));
  for (std::int64_t e = 0; e < spec.n; ++e) weights[static_cast<std::size_t>(e)] = root_filter_weight(e, spec.n);
  std::vector<Rational> filtered(seq.size());
  for (std::size_t m = 0; m < seq.size(); ++m) {
    const std::int64_t e = ((static_cast<std::int64_t>(m) - spec.d) % spec.n + spec.n) % spec.n;
    filtered[m] = weights[static_cast<std::size_t>(e)] * seq[m];
  }
  return detail::gather_progression(filtered, spec, [](const Rational& x) { return x == 0; });
}

/// Floating-point route: coefficientwise (1/n) sum_eps conj(eps(h)) eps(p)^m b_m
/// over the n characters of <p> mod q, realized as the restrictions of the
/// table characters eps_0 .. eps_{n-1}.
inline std::vector<std::complex<double>> extract_character_sum_complex(const std::vector<Rational>& seq,
                                                                       const ProgressionSpec& spec,
                                                                       double tolerance = 1e-9) {
  detail::require_length(seq.size(), spec);
  const CharacterTable table(spec.q);
  const std::int64_t order = table.group_order();
  std::vector<std::complex<double>> filtered(seq.size());
  for (std::size_t m = 0; m < seq.size(); ++m) {
    const double b = seq[m].get_d();
    if (!std::isfinite(b)) throw Error(Errc::OutOfRange, "term " + std::to_string(m) + " overflows a double");
    std::complex<double> weight = 0.0;
    for (std::int64_t j = 0; j < spec.n; ++j) {
      // eps_j(p)^m conj(eps_j(h)), with the exponent of zeta reduced exactly.
      const auto mm = static_cast<std::int64_t>(m % static_cast<std::size_t>(order));
      const std::int64_t e = ((table.exponent(j, spec.p) * mm - table.exponent(j, spec.h)) % order + order) % order;
      weight += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(order));
    }
    weight /= static_cast<double>(spec.n);
    const bool on = static_cast<std::int64_t>(m) >= spec.d && (static_cast<std::int64_t>(m) - spec.d) % spec.n == 0;
    if (!on && std::abs(weight) > tolerance) {
      throw Error(Errc::InvalidArgument, "character filter weight " + std::to_string(std::abs(weight)) +
                                             " off the progression at " + std::to_string(m));
    }
    filtered[m] = on ? weight * b : 0.0;
  }
  return detail::gather_progression(filtered, spec, [](const std::complex<double>& z) { return z == 0.0; });
}

inline std::vector<Rational> extract_character_sum(const std::vector<Rational>& seq, const ProgressionSpec& spec) {
  const auto values = extract_character_sum_complex(seq, spec);
  std::vector<Rational> out;
  out.reserve(values.size());
  for (const auto& z : values) out.emplace_back(z.real());
  return out;
}

inline std::vector<Rational> progression_extract(const std::vector<Rational>& seq, const ProgressionSpec& spec,
                                                 ExtractionRoute route) {
  switch (route) {
    case ExtractionRoute::direct: return extract_direct(seq, spec);
    case ExtractionRoute::roots_of_unity: return extract_roots_of_unity(seq, spec);
    case ExtractionRoute::character_sum: return extract_character_sum(seq, spec);
  }
  throw Error(Errc::InvalidArgument, "unknown route");
}

}  // namespace hiwsign

#endif  // HIWSIGN_CHARACTERS_HPP
