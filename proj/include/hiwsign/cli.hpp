#ifndef HIWSIGN_CLI_HPP
#define HIWSIGN_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hiwsign/characters.hpp"
#include "hiwsign/flagship.hpp"
#include "hiwsign/forms.hpp"
#include "hiwsign/fuzz.hpp"
#include "hiwsign/genfun.hpp"
#include "hiwsign/hecke.hpp"
#include "hiwsign/qseries.hpp"
#include "hiwsign/shimura.hpp"
#include "hiwsign/signscan.hpp"

namespace hiwsign::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string command;
  std::string form_path;
  std::string out_path;
  std::string integral_path;
  std::string recipe = "2:12";
  std::uint32_t theta = 1;
  std::int64_t level = 4;
  int k = 6;
  std::size_t prec = 10000;
  std::vector<std::int64_t> primes{3, 5, 7};
  std::int64_t p_max = 50;
  std::size_t nu_max = 200;
  std::int64_t t = 1;
  std::int64_t t_max = 30;
  int m_max = 4;
  std::int64_t n_max = 50;
  std::int64_t q = 0;
  std::int64_t h = 0;
  std::string mode = "full";
  std::uint64_t seed = 7;
  std::size_t instances = 100;
  std::size_t terms = 100;
};

namespace detail {

inline EtaRecipe parse_recipe(const std::string& text, std::uint32_t theta) {
  EtaRecipe recipe;
  recipe.theta_power = theta;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(Errc::ParseError, "recipe factor '" + item + "' is not d:r");
    try {
      recipe.factors.push_back({std::stoll(item.substr(0, colon)), std::stoll(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "recipe factor '" + item + "' is not d:r");
    }
  }
  return recipe;
}

// Writes to the output path, or to `fallback` when no path was given.
inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& fallback) {
  if (cfg.out_path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw Error(Errc::InvalidArgument, "cannot write " + cfg.out_path);
  file << text;
}

inline std::string dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

inline ScanMode parse_mode(const RunConfig& cfg) {
  if (cfg.mode == "full") return FullMode{};
  if (cfg.mode == "odd") return OddMode{};
  if (cfg.mode == "even") return EvenMode{};
  if (cfg.q < 2 || cfg.h < 2) throw Error(Errc::InvalidArgument, "progression mode needs --q and --h");
  return ProgressionMode{cfg.q, cfg.h};
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline int cmd_expand(const RunConfig& cfg, std::ostream& out) {
  const EtaRecipe recipe = detail::parse_recipe(cfg.recipe, cfg.theta);
  const HalfIntegralForm form(FormDescriptor::make(cfg.level, cfg.k), expand_recipe(recipe, cfg.prec));
  detail::emit(cfg, form_to_json(form).dump() + "\n", out);
  return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const HalfIntegralForm form = load_form(cfg.form_path);
  const auto ts = supported_squarefree(form, cfg.t_max);
  if (ts.empty()) throw Error(Errc::ZeroBase, "no squarefree t <= t_max with a(t) != 0");
  nlohmann::json report;
  bool ok = true;

  nlohmann::json eigen = nlohmann::json::array();
  nlohmann::json identities = nlohmann::json::array();
  for (std::int64_t p : cfg.primes) {
    const Rational trace = extract_trace(form, ts.front(), p);
    nlohmann::json entry{{"p", p}, {"trace", format_rational(trace)},
                         {"deligne", std::string(to_string(deligne_check(trace, p, form.k())))}};
    std::size_t checked = 0;
    nlohmann::json failures = nlohmann::json::array();
    for (std::int64_t t : ts) {
      const int depth = max_relation_depth(form, t, p, cfg.m_max);
      if (depth < 0) continue;
      const auto res = eigen_consistency(form, p, trace, {t}, depth);
      checked += res.residuals.size();
      for (const auto& r : res.failures()) {
        failures.push_back({{"t", r.t}, {"m", r.m}, {"residual", format_rational(r.value)}});
      }

      // Closed forms against the raw coefficients a(t p^{2m}) chi(p)^m inside precision.
      const int chi1_p = TwistCharacters(form, t).chi1(p);
      const auto h1 = h_n_closed(form.a(t), trace, chi1_p, p, form.k());
      const auto split = s_split_closed(form.a(t), form.a(t * p * p) * form.chi(p), trace, chi1_p, p, form.k());
      const auto c = expand(h1, static_cast<std::size_t>(depth + 1));
      bool raw_match = true;
      for (int m = 0; m <= depth + 1; ++m) {
        const Rational raw = hiwsign::detail::a_at(form, t, p, m) * hiwsign::detail::chi_power(form.chi(p), m);
        if (c[static_cast<std::size_t>(m)] != raw) raw_match = false;
      }
      const bool split_ok = split_identity_holds(split, h1);
      ok = ok && raw_match && split_ok;
      identities.push_back({{"p", p}, {"t", t}, {"closed_form_matches_coefficients", raw_match},
                            {"split_identity", split_ok}});
    }
    ok = ok && failures.empty();
    entry["residuals_checked"] = checked;
    entry["failures"] = failures;
    eigen.push_back(entry);
  }
  report["eigen_consistency"] = eigen;
  report["generating_functions"] = identities;

  nlohmann::json mult = nlohmann::json::array();
  for (std::int64_t t : ts) {
    for (std::int64_t m = 1; m <= 15; m += 2) {
      for (std::int64_t n = m + 2; n <= 15; n += 2) {
        if (std::gcd(m, n) != 1 || !form.within(t * m * m * n * n)) continue;
        const Rational r = multiplicativity_check(form, t, m, n);
        ok = ok && r == 0;
        mult.push_back({{"t", t}, {"m", m}, {"n", n}, {"residual", format_rational(r)}});
      }
    }
  }
  report["multiplicativity"] = mult;
  report["passed"] = ok;
  detail::emit(cfg, detail::dump(report), out);
  return ok ? kExitOk : kExitCheckFailed;
}

inline int cmd_lift(const RunConfig& cfg, std::ostream& out) {
  const HalfIntegralForm form = load_form(cfg.form_path);
  const TruncatedSeries integral = cfg.integral_path.empty()
                                       ? expand_recipe(EtaRecipe{{{1, 24}}, 0}, static_cast<std::size_t>(cfg.p_max))
                                       : load_coefficient_file(cfg.integral_path).series;
  const LiftSeries lift = lift_coefficients(form, cfg.t, cfg.n_max);
  const LiftCheckReport check = crosscheck_lift(form, cfg.t, integral, cfg.p_max);

  nlohmann::json report;
  report["t"] = cfg.t;
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : lift.values) values.push_back(format_rational(v));
  report["lift"] = values;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : check.rows) {
    rows.push_back({{"p", r.p},
                    {"lift_ratio", format_rational(r.lift_ratio)},
                    {"integral", format_rational(r.integral)},
                    {"hecke", format_rational(r.hecke)},
                    {"ok", r.ok}});
  }
  report["crosscheck"] = rows;
  report["mismatches"] = check.mismatches();
  report["passed"] = check.passed();
  detail::emit(cfg, detail::dump(report), out);
  return check.passed() ? kExitOk : kExitCheckFailed;
}

inline int cmd_genfun_check(const RunConfig& cfg, std::ostream& out) {
  InstanceGenerator gen(cfg.seed);
  nlohmann::json rows = nlohmann::json::array();
  bool ok = true;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    const auto check = check_identities(gen.next(), cfg.terms);
    ok = ok && check.passed();
    rows.push_back({{"k", check.instance.k},
                    {"p", check.instance.p},
                    {"trace", format_rational(check.instance.trace)},
                    {"chi1_p", check.instance.chi1_p},
                    {"a_t", format_rational(check.instance.a_t)},
                    {"closed_form_matches", check.closed_form_matches},
                    {"split_identity", check.split_identity},
                    {"parity_support", check.parity_support},
                    {"split_matches", check.split_matches}});
  }
  nlohmann::json report{{"seed", cfg.seed}, {"terms", cfg.terms}, {"instances", rows}, {"passed", ok}};
  detail::emit(cfg, detail::dump(report), out);
  return ok ? kExitOk : kExitCheckFailed;
}

inline int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const HalfIntegralForm form = load_form(cfg.form_path);
  const ScanOutcome outcome = scan(form, cfg.t, detail::parse_mode(cfg), cfg.p_max, cfg.nu_max);
  std::ostringstream csv;
  csv << "p,t,mode,length,change_count,first_change_index,zero_count,deligne_status\n";
  for (const auto& r : outcome.reports) {
    csv << r.p << ',' << r.t << ',' << detail::csv_field(r.mode) << ',' << r.length << ',' << r.change_count << ','
        << (r.first_change_index ? std::to_string(*r.first_change_index) : std::string()) << ',' << r.zero_count
        << ',' << to_string(r.deligne) << '\n';
  }
  for (const auto& s : outcome.skipped) err << "skipped p=" << s.p << ": " << s.reason << '\n';
  detail::emit(cfg, csv.str(), out);
  return kExitOk;
}

inline int cmd_characters(const RunConfig& cfg, std::ostream& out) {
  const CharacterTable table(cfg.q);
  nlohmann::json doc;
  doc["q"] = table.modulus();
  doc["generator"] = table.generator();
  doc["zeta_order"] = table.group_order();
  nlohmann::json logs = nlohmann::json::object();
  for (std::int64_t a = 1; a < table.modulus(); ++a) logs[std::to_string(a)] = table.log(a);
  doc["log"] = logs;
  nlohmann::json chars = nlohmann::json::array();
  bool orthogonal = true;
  for (std::int64_t j = 0; j < table.size(); ++j) {
    nlohmann::json row = nlohmann::json::array();
    for (std::int64_t a = 1; a < table.modulus(); ++a) row.push_back(table.exponent(j, a));
    chars.push_back(row);
    for (std::int64_t i = 0; i < table.size(); ++i) {
      const auto v = rational_value(table.column_sum(i, j));
      orthogonal = orthogonal && v && *v == (i == j ? table.size() : 0);
    }
  }
  doc["exponents"] = chars;
  doc["orthogonal"] = orthogonal;
  detail::emit(cfg, detail::dump(doc), out);
  return orthogonal ? kExitOk : kExitCheckFailed;
}

/// Entry point; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"Exact verification toolkit for Hecke eigenforms of half-integral weight", "hiwsign"};
  app.require_subcommand(1);

  auto* expand = app.add_subcommand("expand", "Expand an eta/theta recipe into a form file");
  expand->add_option("--recipe", cfg.recipe, "Eta factors as d:r pairs, comma separated")->capture_default_str();
  expand->add_option("--theta", cfg.theta, "Power of theta(z)")->capture_default_str();
  expand->add_option("--level", cfg.level, "Level N (multiple of 4)")->capture_default_str();
  expand->add_option("--k", cfg.k, "Weight is k + 1/2")->capture_default_str();
  expand->add_option("--prec", cfg.prec, "Highest exponent kept")->capture_default_str();
  expand->add_option("--out", cfg.out_path, "Output file (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "Hecke relations, multiplicativity and closed-form identities");
  verify->add_option("--form", cfg.form_path, "Form file")->required();
  verify->add_option("--primes", cfg.primes, "Primes to test")->delimiter(',')->capture_default_str();
  verify->add_option("--t-max", cfg.t_max, "Largest squarefree t")->capture_default_str();
  verify->add_option("--m-max", cfg.m_max, "Deepest relation index")->capture_default_str();
  verify->add_option("--out", cfg.out_path, "Report file (stdout if omitted)");

  auto* lift = app.add_subcommand("lift", "Shimura lift coefficients and cross-check");
  lift->add_option("--form", cfg.form_path, "Form file")->required();
  lift->add_option("--t", cfg.t, "Squarefree index")->capture_default_str();
  lift->add_option("--n-max", cfg.n_max, "Lift coefficients to compute")->capture_default_str();
  lift->add_option("--integral", cfg.integral_path, "Integral-weight coefficient file (default eta(z)^24)");
  lift->add_option("--p-max", cfg.p_max, "Largest prime to cross-check")->capture_default_str();
  lift->add_option("--out", cfg.out_path, "Report file (stdout if omitted)");

  auto* gf = app.add_subcommand("genfun-check", "Random-instance fuzzing of the generating-function identities");
  gf->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  gf->add_option("--instances", cfg.instances, "Number of instances")->capture_default_str();
  gf->add_option("--terms", cfg.terms, "Series terms compared")->capture_default_str();
  gf->add_option("--out", cfg.out_path, "Report file (stdout if omitted)");

  auto* sc = app.add_subcommand("scan", "Sign-change report over primes (CSV)");
  sc->set_help_flag("--help", "Print this help message and exit");
  sc->add_option("--form", cfg.form_path, "Form file")->required();
  sc->add_option("--t", cfg.t, "Squarefree index")->capture_default_str();
  sc->add_option("--mode", cfg.mode, "full, odd, even or progression")
      ->check(CLI::IsMember({"full", "odd", "even", "progression"}))
      ->capture_default_str();
  sc->add_option("--q", cfg.q, "Progression modulus (prime)");
  sc->add_option("--h", cfg.h, "Progression residue, 1 < h < q");
  sc->add_option("--p-max", cfg.p_max, "Largest prime scanned")->capture_default_str();
  sc->add_option("--nu-max", cfg.nu_max, "Sequence length minus one")->capture_default_str();
  sc->add_option("--out", cfg.out_path, "CSV file (stdout if omitted)");

  auto* ch = app.add_subcommand("characters", "Dump the Dirichlet character table modulo a prime");
  ch->add_option("--q", cfg.q, "Prime modulus")->required();
  ch->add_option("--out", cfg.out_path, "Output file (stdout if omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << "Run with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (*expand) return cmd_expand(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*lift) return cmd_lift(cfg, out);
    if (*gf) return cmd_genfun_check(cfg, out);
    if (*sc) return cmd_scan(cfg, out, err);
    if (*ch) return cmd_characters(cfg, out);
  } catch (const Error& e) {
    nlohmann::json diag{{"error", std::string(errc_name(e.code()))}, {"detail", e.what()}};
    err << diag.dump() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hiwsign::cli

#endif  // HIWSIGN_CLI_HPP
