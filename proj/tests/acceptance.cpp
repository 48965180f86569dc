// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hiwsign/characters.hpp"
#include "hiwsign/flagship.hpp"
#include "hiwsign/fuzz.hpp"
#include "hiwsign/genfun.hpp"
#include "hiwsign/signscan.hpp"

using namespace hiwsign;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (!out.ok) ++failures;
  std::printf("%s criterion %d: %s (%.2fs)%s%s\n", out.ok ? "PASS" : "FAIL", id, name.c_str(), seconds,
              out.detail.empty() ? "" : " - ", out.detail.c_str());
  std::fflush(stdout);
}

// Naive q * prod_{n<=100} (1 - q^n)^24, one binomial factor at a time.
std::vector<Integer> naive_delta(std::size_t prec) {
  std::vector<Integer> c(prec + 1);
  c[1] = 1;
  for (std::size_t n = 1; n <= prec; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t i = prec; i >= n; --i) c[i] -= c[i - n];
    }
  }
  return c;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(const std::string& args) {
  const std::string command = std::string("\"") + HIWSIGN_CLI_PATH + "\" " + args + " 2>/dev/null";
  return std::system(command.c_str());
}

// Smallest odd prime p != q, coprime to the level, with h in <p> mod q.
std::int64_t admissible_prime(std::int64_t q, std::int64_t h, std::int64_t level) {
  for (std::int64_t p : primes_up_to(1000)) {
    if (p == q || level % p == 0) continue;
    try {
      index_of(p, h, q);
      return p;
    } catch (const Error& e) {
      if (e.code() != Errc::NotInSubgroup) throw;
    }
  }
  throw Error(Errc::NotInSubgroup, "no admissible prime below 1000");
}

}  // namespace

int main() {
  const FlagshipConfig config;
  const std::filesystem::path fixture = std::filesystem::path(HIWSIGN_FIXTURE_DIR) / "flagship.json";
  std::optional<VerifiedFlagship> verified;

  report(1, "closed form H_1 equals the twisted recurrence on 100 seeded instances", [] {
    Outcome out;
    const auto start = Clock::now();
    InstanceGenerator gen(2024);
    for (int i = 0; i < 100; ++i) {
      const auto in = gen.next();
      if (deligne_check(in.trace, in.p, in.k) == DeligneStatus::violated) out.fail("draw outside the bound");
      const auto seq = twisted_sequence(in.a_t, in.trace, in.chi1_p, in.p, in.k, 100);
      if (expand(h_n_closed(in.a_t, in.trace, in.chi1_p, in.p, in.k), 100) != seq) {
        out.fail("instance " + std::to_string(i) + " differs");
      }
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (seconds >= 10.0) out.fail("took " + std::to_string(seconds) + "s");
    return out;
  });

  report(2, "S0 + S1 = H_1 exactly, with even/odd support matching the recurrence", [] {
    Outcome out;
    InstanceGenerator gen(2024);
    for (int i = 0; i < 100; ++i) {
      const auto check = check_identities(gen.next(), 100);
      if (!check.split_identity) out.fail("instance " + std::to_string(i) + ": S0 + S1 != H_1");
      if (!check.parity_support) out.fail("instance " + std::to_string(i) + ": parity support");
      if (!check.split_matches) out.fail("instance " + std::to_string(i) + ": parity-filtered mismatch");
    }
    return out;
  });

  report(3, "eta(z)^24 to q^100 against a naive product; tau(6) = tau(2) tau(3)", [] {
    Outcome out;
    const auto delta = eta_power(1, 24, 100);
    const auto oracle = naive_delta(100);
    const std::vector<long> expected{-24, 252, -1472, 4830, -6048, -16744};
    for (std::size_t n = 2; n <= 7; ++n) {
      if (delta[n] != expected[n - 2]) out.fail("q^" + std::to_string(n) + " = " + format_rational(delta[n]));
    }
    for (std::size_t n = 0; n <= 100; ++n) {
      if (delta[n] != Rational(oracle[n])) out.fail("oracle mismatch at q^" + std::to_string(n));
    }
    if (delta[6] != delta[2] * delta[3]) out.fail("tau(6) != tau(2) tau(3)");
    return out;
  });

  report(4, "flagship eigen-consistency (p = 3, 5, 7) and lift cross-check (p <= 50)", [&] {
    Outcome out;
    verified = load_verified_flagship(config, fixture);
    const auto& r = verified->recipe_result;
    out.detail = "source " + (verified->ok() ? verified->source : std::string("none")) + ", " +
                 std::to_string(r.residuals_checked) + " residuals, " + std::to_string(r.lift_rows_checked) +
                 " lift rows";
    if (!verified->ok()) {
      out.fail(r.failures.empty() ? "recipe and fixture failed" : r.failures.front());
    }
    return out;
  });

  if (!verified || !verified->ok()) {
    std::printf("FAIL criteria 5-7, 10: no verified flagship\n");
    std::printf("FAILED %d criteria\n", failures + 4);
    return 1;
  }
  const HalfIntegralForm& form = *verified->form;

  report(5, "A_t(p) = a(t p^2) + chi_{t,N}(p) p^{k-1} a(t) on the flagship", [&] {
    Outcome out;
    std::size_t checked = 0;
    for (std::int64_t t : supported_squarefree(form, 30)) {
      const TwistCharacters tw(form, t);
      for (std::int64_t p : primes_up_to(50)) {
        if (form.level() % p == 0 || t * p * p > form.prec()) continue;
        const auto lift = lift_coefficients(form, t, p);
        const Rational rhs = form.a(t * p * p) +
                             tw.chi_tN(p) * Rational(ipow(p, static_cast<unsigned long>(form.k() - 1))) * form.a(t);
        ++checked;
        if (lift.at(p) != rhs) out.fail("t=" + std::to_string(t) + " p=" + std::to_string(p));
      }
    }
    out.detail = std::to_string(checked) + " pairs";
    return out;
  });

  report(6, "sign changes in full, odd and even modes for 3 <= p <= 50 at M = 200", [&] {
    Outcome out;
    const auto start = Clock::now();
    std::vector<std::string> exceptions;
    for (const ScanMode& mode : {ScanMode{FullMode{}}, ScanMode{OddMode{}}, ScanMode{EvenMode{}}}) {
      const auto outcome = scan(form, 1, mode, 50, 200);
      for (const auto& s : outcome.skipped) exceptions.push_back(mode_name(mode) + " p=" + std::to_string(s.p));
      for (const auto& r : outcome.reports) {
        if (r.change_count == 0) exceptions.push_back(mode_name(mode) + " p=" + std::to_string(r.p));
      }
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    out.detail = std::to_string(exceptions.size()) + " exceptions";
    for (const auto& e : exceptions) out.detail += " " + e;
    if (exceptions.size() > 2) out.fail(out.detail);
    if (seconds >= 30.0) out.fail("took " + std::to_string(seconds) + "s");
    return out;
  });

  report(7, "three progression routes agree; progression scans change sign", [&] {
    Outcome out;
    std::mt19937_64 rng(7);
    std::ostringstream notes;
    for (auto [q, h] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 2}, {5, 2}, {5, 3}, {7, 3}}) {
      const std::int64_t p = admissible_prime(q, h, form.level());
      const auto spec = ProgressionSpec::make(p, q, h);
      const std::string tag = "(" + std::to_string(q) + "," + std::to_string(h) + ") p=" + std::to_string(p);
      notes << tag << " n=" << spec.n << " d=" << spec.d << "; ";

      // The flagship sequence scaled by p^{-k v} (a positive scaling, so the
      // signs are untouched) and bounded integer sequences.
      std::vector<std::vector<Rational>> inputs;
      auto b = twisted_sequence(form.a(1), extract_trace(form, 1, p), TwistCharacters(form, 1).chi1(p), p,
                                form.k(), 59);
      const Rational inv(1, ipow(p, static_cast<unsigned long>(form.k())));
      Rational scale = 1;
      for (auto& x : b) {
        x *= scale;
        scale *= inv;
      }
      inputs.push_back(std::move(b));
      std::uniform_int_distribution<long> draw(-1000000, 1000000);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<Rational> seq(60);
        for (auto& x : seq) x = draw(rng);
        inputs.push_back(std::move(seq));
      }
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto& seq = inputs[i];
        const bool integral = i > 0;
        const auto direct = progression_extract(seq, spec, ExtractionRoute::direct);
        if (progression_extract(seq, spec, ExtractionRoute::roots_of_unity) != direct) {
          out.fail(tag + ": roots_of_unity differs from direct");
        }
        const auto approx = extract_character_sum_complex(seq, spec);
        if (approx.size() != direct.size()) {
          out.fail(tag + ": character_sum length");
          continue;
        }
        for (std::size_t j = 0; j < direct.size(); ++j) {
          const double err = std::abs(approx[j] - direct[j].get_d());
          const bool exact = spec.n <= 2 && integral;
          if (exact ? Rational(approx[j].real()) != direct[j] || approx[j].imag() != 0.0 : err > 1e-9) {
            out.fail(tag + ": character_sum term " + std::to_string(j) + " off by " + std::to_string(err));
          }
        }
      }

      const auto scanned = scan_prime(form, 1, ProgressionMode{q, h}, p, 200);
      notes << "changes " << scanned.change_count << "; ";
      if (scanned.change_count < 1) out.fail(tag + ": no sign change in the progression");
    }
    out.detail = notes.str();
    return out;
  });

  report(8, "Deligne status of the flagship, violated example, Satake root kinds", [&] {
    Outcome out;
    for (std::int64_t p : primes_up_to(100)) {
      if (p == 2) continue;
      if (deligne_check(extract_trace(form, 1, p), p, form.k()) != DeligneStatus::strict) {
        out.fail("p=" + std::to_string(p) + " not strict");
      }
    }
    if (deligne_check(6, 2, 2) != DeligneStatus::violated) out.fail("(k=2, p=2, trace=6) not violated");
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> num(-3000, 3000), den(1, 20);
    std::uniform_int_distribution<int> prime_index(0, 14);
    const auto primes = primes_up_to(50);
    for (int i = 0; i < 1000; ++i) {
      Rational trace(num(rng), den(rng));
      trace.canonicalize();
      const std::int64_t p = primes[static_cast<std::size_t>(prime_index(rng))];
      const auto local = satake_data(trace, p, 2);
      const int s = sign(local.disc);
      const RootKind want = s > 0 ? RootKind::real_distinct : (s == 0 ? RootKind::real_double : RootKind::complex_pair);
      if (local.root_kind != want) out.fail("root kind mismatch at draw " + std::to_string(i));
    }
    return out;
  });

  report(9, "remark polynomial for m_p = 2 and Sturm real-root counts", [] {
    Outcome out;
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> num(-500, 500), den(1, 30);
    int complex_pairs = 0;
    int draws = 0;
    while (complex_pairs < 100 && draws < 100000) {
      ++draws;
      Rational trace(num(rng), den(rng));
      trace.canonicalize();
      const auto local = satake_data(trace, 7, 2);
      const Polynomial q = remark_polynomial(local, 2);
      if (q != (Polynomial{1, -local.trace, local.norm})) out.fail("Q != norm X^2 - trace X + 1");
      if (local.root_kind != RootKind::complex_pair) continue;
      ++complex_pairs;
      if (real_root_count(q) != 0) out.fail("complex pair with a real root of Q");
    }
    if (complex_pairs < 100) out.fail("only " + std::to_string(complex_pairs) + " complex-pair draws");
    if (real_root_count(Polynomial{1, 0, 1}) != 0) out.fail("X^2 + 1");
    if (real_root_count(Polynomial{-2, 0, 1}) != 2) out.fail("X^2 - 2");
    if (real_root_count(Polynomial::monomial(1, 3)) != 1) out.fail("X^3");
    return out;
  });

  report(10, "scan and genfun-check --seed 7 are byte-identical across runs", [&] {
    Outcome out;
    const auto dir = std::filesystem::temp_directory_path();
    const std::string form_arg = "--form \"" + fixture.string() + "\"";
    std::vector<std::string> contents;
    for (int run = 0; run < 2; ++run) {
      const auto scan_out = dir / ("hiwsign_accept_scan_" + std::to_string(run) + ".csv");
      const auto gf_out = dir / ("hiwsign_accept_gf_" + std::to_string(run) + ".json");
      if (run_cli("scan " + form_arg + " --t 1 --mode full --p-max 50 --nu-max 200 --out \"" + scan_out.string() +
                  "\"") != 0) {
        out.fail("scan exited nonzero");
      }
      if (run_cli("genfun-check --seed 7 --out \"" + gf_out.string() + "\"") != 0) {
        out.fail("genfun-check exited nonzero");
      }
      contents.push_back(slurp(scan_out));
      contents.push_back(slurp(gf_out));
    }
    if (contents[0].empty() || contents[1].empty()) out.fail("empty report");
    if (contents[0] != contents[2]) out.fail("scan reports differ");
    if (contents[1] != contents[3]) out.fail("genfun-check reports differ");
    return out;
  });

  if (failures == 0) {
    std::printf("ALL 10 CRITERIA PASSED\n");
    return 0;
  }
  std::printf("FAILED %d criteria\n", failures);
  return 1;
}
