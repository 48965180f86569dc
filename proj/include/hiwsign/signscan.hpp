#ifndef HIWSIGN_SIGNSCAN_HPP
#define HIWSIGN_SIGNSCAN_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hiwsign/arith.hpp"
#include "hiwsign/characters.hpp"
#include "hiwsign/error.hpp"
#include "hiwsign/forms.hpp"
#include "hiwsign/hecke.hpp"
#include "hiwsign/rational.hpp"
#include "hiwsign/twist.hpp"

namespace hiwsign {

/// b_0..b_M with b_v = a(t p^{2v}) / chi(p^v), generated from the two Hecke
/// relations: b_1 = (trace - chi_1(p) p^{k-1}) b_0 and
/// b_{m+1} = trace b_m - p^{2k-1} b_{m-1}.
inline std::vector<Rational> twisted_sequence(const Rational& a_t, const Rational& trace, int chi1_p, std::int64_t p,
                                              int k, std::size_t M) {
  if (k < 2) throw Error(Errc::InvalidArgument, "k must be at least 2");
  std::vector<Rational> b(M + 1);
  b[0] = a_t;
  if (M == 0) return b;
  b[1] = (trace - chi1_p * Rational(ipow(p, static_cast<unsigned long>(k - 1)))) * a_t;
  const Rational norm = hecke_norm(p, k);
  for (std::size_t m = 1; m < M; ++m) b[m + 1] = trace * b[m] - norm * b[m - 1];
  return b;
}

struct FullMode {};
struct OddMode {};
struct EvenMode {};
struct ProgressionMode {
  std::int64_t q;
  std::int64_t h;
};

using ScanMode = std::variant<FullMode, OddMode, EvenMode, ProgressionMode>;

inline std::string mode_name(const ScanMode& mode) {
  struct Visitor {
    std::string operator()(FullMode) const { return "full"; }
    std::string operator()(OddMode) const { return "odd"; }
    std::string operator()(EvenMode) const { return "even"; }
    std::string operator()(const ProgressionMode& m) const {
      return "progression(" + std::to_string(m.q) + "," + std::to_string(m.h) + ")";
    }
  };
  return std::visit(Visitor{}, mode);
}

template <typename T>
std::vector<T> select_stride(const std::vector<T>& seq, std::size_t start, std::size_t stride) {
  std::vector<T> out;
  for (std::size_t i = start; i < seq.size(); i += stride) out.push_back(seq[i]);
  return out;
}

/// Index filter for a mode. Progression mode needs the prime p of the sequence.
inline std::vector<Rational> subsequence(const std::vector<Rational>& seq, const ScanMode& mode, std::int64_t p = 0) {
  if (std::holds_alternative<FullMode>(mode)) return seq;
  if (std::holds_alternative<OddMode>(mode)) return select_stride(seq, 1, 2);
  if (std::holds_alternative<EvenMode>(mode)) return select_stride(seq, 0, 2);
  const auto& prog = std::get<ProgressionMode>(mode);
  return progression_extract(seq, ProgressionSpec::make(p, prog.q, prog.h), ExtractionRoute::direct);
}

/// Sign-change statistics of a real sequence. Zeros are transparent: a change
/// is a pair i < j of nonzero entries of opposite sign with only zeros between.
struct SignChangeReport {
  std::int64_t p = 0;
  std::int64_t t = 0;
  std::string mode = "full";
  std::size_t length = 0;
  std::size_t change_count = 0;
  std::optional<std::size_t> first_change_index;
  std::vector<std::pair<std::size_t, std::size_t>> change_positions;
  std::size_t zero_count = 0;
  DeligneStatus deligne = DeligneStatus::strict;
};

inline SignChangeReport count_sign_changes(const std::vector<Rational>& seq) {
  SignChangeReport report;
  report.length = seq.size();
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const int s = sign(seq[i]);
    if (s == 0) {
      ++report.zero_count;
      continue;
    }
    if (last && sign(seq[*last]) != s) report.change_positions.emplace_back(*last, i);
    last = i;
  }
  report.change_count = report.change_positions.size();
  if (!report.change_positions.empty()) report.first_change_index = report.change_positions.front().first;
  return report;
}

struct SkippedPrime {
  std::int64_t p;
  std::string reason;
};

struct ScanOutcome {
  std::vector<SignChangeReport> reports;  // sorted by p
  std::vector<SkippedPrime> skipped;      // sorted by p
};

/// Sign-change report for one prime. The sequence is generated by the
/// recurrence from a(t) and a(t p^2), so M is not limited by the precision.
inline SignChangeReport scan_prime(const HalfIntegralForm& form, std::int64_t t, const ScanMode& mode, std::int64_t p,
                                   std::size_t M) {
  const Rational trace = extract_trace(form, t, p);
  const int chi1_p = TwistCharacters(form, t).chi1(p);
  const auto seq = twisted_sequence(form.a(t), trace, chi1_p, p, form.k(), M);
  SignChangeReport report = count_sign_changes(subsequence(seq, mode, p));
  report.p = p;
  report.t = t;
  report.mode = mode_name(mode);
  report.deligne = deligne_check(trace, p, form.k());
  return report;
}

/// Scans every prime p <= p_max coprime to the level. Primes where a(t p^2)
/// is beyond the form's precision, or where the progression is undefined,
/// are listed as skipped. Per-prime work runs concurrently; the assembled
/// result does not depend on scheduling.
inline ScanOutcome scan(const HalfIntegralForm& form, std::int64_t t, const ScanMode& mode, std::int64_t p_max,
                        std::size_t M, bool parallel = true) {
  if (!is_squarefree(t)) throw Error(Errc::NotSquarefree, std::to_string(t) + " is not squarefree");
  if (form.a(t) == 0) throw Error(Errc::ZeroBase, "a(" + std::to_string(t) + ") = 0");

  using Result = std::variant<SignChangeReport, SkippedPrime>;
  auto one = [&form, t, &mode, M](std::int64_t p) -> Result {
    try {
      return scan_prime(form, t, mode, p, M);
    } catch (const Error& e) {
      if (e.code() == Errc::PrecisionExceeded || e.code() == Errc::NotInSubgroup || e.code() == Errc::SamePrime ||
          e.code() == Errc::LengthMismatch) {
        return SkippedPrime{p, e.what()};
      }
      throw;
    }
  };

  std::vector<std::int64_t> primes;
  for (std::int64_t p : primes_up_to(p_max)) {
    if (std::gcd(p, form.level()) == 1) primes.push_back(p);
  }
  std::vector<Result> results;
  if (parallel) {
    std::vector<std::future<Result>> jobs;
    for (std::int64_t p : primes) jobs.push_back(std::async(std::launch::async, one, p));
    for (auto& j : jobs) results.push_back(j.get());
  } else {
    for (std::int64_t p : primes) results.push_back(one(p));
  }

  ScanOutcome out;
  for (auto& r : results) {
    if (auto* rep = std::get_if<SignChangeReport>(&r)) {
      out.reports.push_back(std::move(*rep));
    } else {
      out.skipped.push_back(std::get<SkippedPrime>(std::move(r)));
    }
  }
  return out;
}

}  // namespace hiwsign

#endif  // HIWSIGN_SIGNSCAN_HPP
