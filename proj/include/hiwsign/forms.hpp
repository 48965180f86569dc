#ifndef HIWSIGN_FORMS_HPP
#define HIWSIGN_FORMS_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hiwsign/arith.hpp"
#include "hiwsign/error.hpp"
#include "hiwsign/qseries.hpp"
#include "hiwsign/rational.hpp"

namespace hiwsign {

/// Real (+-1 valued) Dirichlet character modulo N, either trivial or given by
/// its values on the units mod N.
class RealCharacter {
 public:
  static RealCharacter trivial(std::int64_t modulus) { return RealCharacter(modulus, {}); }

  /// Validates that `values` covers exactly the units mod `modulus`, takes
  /// values in {+1, -1}, and is multiplicative.
  static RealCharacter from_table(std::int64_t modulus, std::map<std::int64_t, int> values) {
    auto bad = [](const std::string& why) { return Error(Errc::BadCharacter, why); };
    for (const auto& [r, v] : values) {
      if (r < 0 || r >= modulus) throw bad("residue " + std::to_string(r) + " out of range");
      if (std::gcd(r, modulus) != 1) throw bad("residue " + std::to_string(r) + " is not a unit");
      if (v != 1 && v != -1) throw bad("value at " + std::to_string(r) + " is not +-1");
    }
    for (std::int64_t r = 0; r < modulus; ++r) {
      if (std::gcd(r, modulus) == 1 && !values.contains(r)) throw bad("missing unit " + std::to_string(r));
    }
    if (modulus > 1 && values.at(1) != 1) throw bad("chi(1) must be 1");
    for (const auto& [a, va] : values) {
      for (const auto& [b, vb] : values) {
        if (values.at(a * b % modulus) != va * vb) {
          throw bad("not multiplicative at " + std::to_string(a) + "*" + std::to_string(b));
        }
      }
    }
    return RealCharacter(modulus, std::move(values));
  }

  std::int64_t modulus() const noexcept { return modulus_; }
  bool is_trivial() const noexcept { return values_.empty(); }
  const std::map<std::int64_t, int>& table() const noexcept { return values_; }

  int operator()(std::int64_t n) const {
    std::int64_t r = n % modulus_;
    if (r < 0) r += modulus_;
    if (std::gcd(r, modulus_) != 1) return 0;
    return is_trivial() ? 1 : values_.at(r);
  }

  bool operator==(const RealCharacter&) const = default;

 private:
  RealCharacter(std::int64_t modulus, std::map<std::int64_t, int> values)
      : modulus_(modulus), values_(std::move(values)) {}

  std::int64_t modulus_;
  std::map<std::int64_t, int> values_;
};

/// Level, weight parameter k (weight k + 1/2) and nebentypus.
struct FormDescriptor {
  std::int64_t level;
  int k;
  RealCharacter character;

  static FormDescriptor make(std::int64_t level, int k, std::map<std::int64_t, int> table = {}) {
    if (level < 1 || level % 4 != 0) {
      throw Error(Errc::InvalidLevel, "level " + std::to_string(level) + " is not a positive multiple of 4");
    }
    if (k < 2) throw Error(Errc::InvalidArgument, "k must be at least 2");
    RealCharacter chi =
        table.empty() ? RealCharacter::trivial(level) : RealCharacter::from_table(level, std::move(table));
    return FormDescriptor{level, k, std::move(chi)};
  }
};

/// A cusp form of weight k + 1/2 given by a truncated q-expansion.
class HalfIntegralForm {
 public:
  HalfIntegralForm(FormDescriptor descriptor, TruncatedSeries series)
      : descriptor_(std::move(descriptor)), series_(std::move(series)) {
    if (series_[0] != 0) throw Error(Errc::NonCuspidal, "a(0) = " + format_rational(series_[0]));
  }

  const FormDescriptor& descriptor() const noexcept { return descriptor_; }
  const TruncatedSeries& series() const noexcept { return series_; }
  std::int64_t level() const noexcept { return descriptor_.level; }
  int k() const noexcept { return descriptor_.k; }
  int chi(std::int64_t n) const { return descriptor_.character(n); }
  std::int64_t prec() const noexcept { return static_cast<std::int64_t>(series_.prec()); }

  /// Raw coefficient a(n).
  const Rational& a(std::int64_t n) const {
    if (n < 0 || n > prec()) {
      throw Error(Errc::PrecisionExceeded,
                  "a(" + std::to_string(n) + ") beyond precision " + std::to_string(prec()));
    }
    return series_[static_cast<std::size_t>(n)];
  }

  bool within(std::int64_t n) const noexcept { return n >= 0 && n <= prec(); }

 private:
  FormDescriptor descriptor_;
  TruncatedSeries series_;
};

/// a(t m^2) for squarefree t.
inline const Rational& coefficient(const HalfIntegralForm& form, std::int64_t t, std::int64_t m) {
  if (!is_squarefree(t)) throw Error(Errc::NotSquarefree, std::to_string(t) + " is not squarefree");
  if (m < 1) throw Error(Errc::OutOfRange, "m must be positive");
  const __int128 n = static_cast<__int128>(t) * m * m;
  if (n > form.prec()) {
    throw Error(Errc::PrecisionExceeded, "t*m^2 beyond precision " + std::to_string(form.prec()));
  }
  return form.a(static_cast<std::int64_t>(n));
}

// ---------------------------------------------------------------------------
// File format

struct CoefficientFile {
  std::int64_t level = 0;
  int k = 0;
  std::map<std::int64_t, int> character;  // empty means trivial
  TruncatedSeries series{0};
};

namespace detail {

inline nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
}

}  // namespace detail

/// Parses the JSON coefficient format without form-level validation. Used
/// directly for integral-weight comparison data.
inline CoefficientFile parse_coefficient_json(const nlohmann::json& doc) {
  CoefficientFile out;
  try {
    out.level = doc.at("level").get<std::int64_t>();
    out.k = doc.at("k").get<int>();
    const auto& chi = doc.at("character");
    if (chi.is_string()) {
      if (chi.get<std::string>() != "trivial") throw Error(Errc::BadCharacter, "unknown character name");
    } else {
      for (const auto& [key, value] : chi.items()) {
        std::size_t used = 0;
        const long long r = std::stoll(key, &used);
        if (used != key.size()) throw Error(Errc::ParseError, "bad residue key '" + key + "'");
        out.character[r] = value.get<int>();
      }
    }
    const auto prec = doc.at("prec").get<std::int64_t>();
    const auto& coeffs = doc.at("coeffs");
    if (prec < 0 || !coeffs.is_array() || coeffs.size() != static_cast<std::size_t>(prec) + 1) {
      throw Error(Errc::ParseError, "coeffs must hold prec+1 entries");
    }
    std::vector<Rational> values;
    values.reserve(coeffs.size());
    for (const auto& c : coeffs) values.push_back(parse_rational(c.get<std::string>()));
    out.series = TruncatedSeries(std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(Errc::ParseError, e.what());
  } catch (const std::out_of_range& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return out;
}

inline CoefficientFile load_coefficient_file(const std::filesystem::path& path) {
  return parse_coefficient_json(detail::read_json(path));
}

inline HalfIntegralForm form_from_json(const nlohmann::json& doc) {
  CoefficientFile raw = parse_coefficient_json(doc);
  if (raw.series[0] != 0) throw Error(Errc::NonCuspidal, "coefficient index 0 must be \"0\"");
  return HalfIntegralForm(FormDescriptor::make(raw.level, raw.k, std::move(raw.character)), std::move(raw.series));
}

inline HalfIntegralForm load_form(const std::filesystem::path& path) { return form_from_json(detail::read_json(path)); }

inline nlohmann::json series_to_json(std::int64_t level, int k, const RealCharacter& chi,
                                     const TruncatedSeries& series) {
  nlohmann::json doc;
  doc["level"] = level;
  doc["k"] = k;
  if (chi.is_trivial()) {
    doc["character"] = "trivial";
  } else {
    nlohmann::json table = nlohmann::json::object();
    for (const auto& [r, v] : chi.table()) table[std::to_string(r)] = v;
    doc["character"] = table;
  }
  doc["prec"] = series.prec();
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : series.coeffs()) coeffs.push_back(format_rational(c));
  doc["coeffs"] = std::move(coeffs);
  return doc;
}

inline nlohmann::json form_to_json(const HalfIntegralForm& form) {
  return series_to_json(form.level(), form.k(), form.descriptor().character, form.series());
}

inline void save_form(const HalfIntegralForm& form, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  out << form_to_json(form).dump() << '\n';
}

}  // namespace hiwsign

#endif  // HIWSIGN_FORMS_HPP
