#ifndef HIWSIGN_FLAGSHIP_HPP
#define HIWSIGN_FLAGSHIP_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hiwsign/arith.hpp"
#include "hiwsign/forms.hpp"
#include "hiwsign/hecke.hpp"
#include "hiwsign/qseries.hpp"
#include "hiwsign/shimura.hpp"

namespace hiwsign {

/// The concrete form the verification harness runs on: by default
/// eta(2z)^12 theta(z) in weight 13/2, level 4, trivial character, whose
/// Shimura lifts have the eigenvalues of Delta = eta(z)^24.
struct FlagshipConfig {
  EtaRecipe recipe{{{2, 12}}, 1};
  std::int64_t level = 4;
  int k = 6;
  std::size_t prec = 10000;
  EtaRecipe integral_recipe{{{1, 24}}, 0};
  std::vector<std::int64_t> eigen_primes{3, 5, 7};
  std::int64_t t_max = 30;
  int m_max = 4;
  std::int64_t lift_p_max = 50;
};

struct SuiteResult {
  std::size_t residuals_checked = 0;
  std::size_t lift_rows_checked = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

inline std::vector<std::int64_t> supported_squarefree(const HalfIntegralForm& form, std::int64_t t_max) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = 1; t <= t_max && form.within(t); ++t) {
    if (is_squarefree(t) && form.a(t) != 0) out.push_back(t);
  }
  return out;
}

/// Eigen-consistency at each configured prime (relations up to depth m_max
/// wherever the precision reaches) and the lift cross-check against the
/// integral-weight eigenform for every t whose lift fits in precision.
inline SuiteResult run_flagship_suite(const HalfIntegralForm& form, const TruncatedSeries& integral,
                                      const FlagshipConfig& config) {
  SuiteResult result;
  const auto ts = supported_squarefree(form, config.t_max);
  if (ts.empty()) {
    result.failures.push_back("no squarefree t <= t_max with a(t) != 0");
    return result;
  }
  for (std::int64_t p : config.eigen_primes) {
    try {
      const Rational trace = extract_trace(form, ts.front(), p);
      for (std::int64_t t : ts) {
        const int depth = max_relation_depth(form, t, p, config.m_max);
        if (depth < 0) continue;
        const auto report = eigen_consistency(form, p, trace, {t}, depth);
        result.residuals_checked += report.residuals.size();
        for (const auto& r : report.failures()) {
          result.failures.push_back("p=" + std::to_string(p) + " t=" + std::to_string(t) + " m=" +
                                    std::to_string(r.m) + " residual " + format_rational(r.value));
        }
      }
    } catch (const Error& e) {
      result.failures.push_back("p=" + std::to_string(p) + ": " + e.what());
    }
  }
  for (std::int64_t t : ts) {
    const __int128 need = static_cast<__int128>(t) * config.lift_p_max * config.lift_p_max;
    if (t != ts.front() && need > form.prec()) continue;
    try {
      const auto report = crosscheck_lift(form, t, integral, config.lift_p_max);
      result.lift_rows_checked += report.rows.size();
      for (std::int64_t p : report.mismatches()) {
        result.failures.push_back("lift mismatch t=" + std::to_string(t) + " p=" + std::to_string(p));
      }
    } catch (const Error& e) {
      result.failures.push_back("lift t=" + std::to_string(t) + ": " + e.what());
    }
  }
  return result;
}

inline HalfIntegralForm build_flagship(const FlagshipConfig& config) {
  return HalfIntegralForm(FormDescriptor::make(config.level, config.k), expand_recipe(config.recipe, config.prec));
}

struct VerifiedFlagship {
  std::optional<HalfIntegralForm> form;
  std::string source;  // "recipe", "fixture", or empty when both failed
  SuiteResult recipe_result;
  std::optional<SuiteResult> fixture_result;

  bool ok() const { return form.has_value(); }
};

/// Builds the configured recipe and runs the suite on it; on failure, loads
/// the vendored fixture and runs the identical suite on that instead.
inline VerifiedFlagship load_verified_flagship(const FlagshipConfig& config,
                                               const std::filesystem::path& fixture_path) {
  VerifiedFlagship out;
  const TruncatedSeries integral =
      expand_recipe(config.integral_recipe, static_cast<std::size_t>(config.lift_p_max));
  try {
    HalfIntegralForm built = build_flagship(config);
    out.recipe_result = run_flagship_suite(built, integral, config);
    if (out.recipe_result.passed()) {
      out.form = std::move(built);
      out.source = "recipe";
      return out;
    }
  } catch (const Error& e) {
    out.recipe_result.failures.push_back(std::string("recipe: ") + e.what());
  }
  try {
    HalfIntegralForm fixture = load_form(fixture_path);
    out.fixture_result = run_flagship_suite(fixture, integral, config);
    if (out.fixture_result->passed()) {
      out.form = std::move(fixture);
      out.source = "fixture";
    }
  } catch (const Error& e) {
    out.fixture_result = SuiteResult{};
    out.fixture_result->failures.push_back(std::string("fixture: ") + e.what());
  }
  return out;
}

}  // namespace hiwsign

#endif  // HIWSIGN_FLAGSHIP_HPP
