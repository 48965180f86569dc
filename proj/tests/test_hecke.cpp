#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "hiwsign/hecke.hpp"
#include "test_support.hpp"

using namespace hiwsign;
using hiwsign::testing::flagship;
using hiwsign::testing::naive_delta;
using hiwsign::testing::synthetic_form;

TEST(ExtractTrace, SyntheticInverse) {
  // k = 2, N = 4, t0 = 1, p = 3: chi_1(3) = (16 | 3) = 1.
  const auto form = synthetic_form(1, 3, 10, 2, 1);
  EXPECT_EQ(TwistCharacters(form, 1).chi1(3), 1);
  EXPECT_EQ(extract_trace(form, 1, 3), 10);
}

TEST(ExtractTrace, Errors) {
  const auto form = synthetic_form(1, 3, 10, 2, 1);
  EXPECT_ERRC(extract_trace(form, 2, 3), Errc::ZeroBase);
  EXPECT_ERRC(extract_trace(form, 1, 2), Errc::NotCoprime);
  const auto shallow = synthetic_form(1, 3, 10, 2, 1, 4, 1);  // precision 9
  EXPECT_ERRC(extract_trace(shallow, 1, 5), Errc::PrecisionExceeded);
}

TEST(ExtractTrace, FlagshipMatchesDelta) {
  const auto delta = naive_delta(100, 100);
  for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    EXPECT_EQ(extract_trace(flagship(), 1, p), Rational(delta[static_cast<std::size_t>(p)])) << p;
  }
  EXPECT_EQ(extract_trace(flagship(), 1, 3), 252);
}

TEST(ExtractTrace, IndependentOfBase) {
  const auto& f = flagship();
  const auto ts = supported_squarefree(f, 30);
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    const Rational reference = extract_trace(f, ts.front(), p);
    for (std::int64_t t : ts) {
      if (t * p * p > f.prec()) continue;
      EXPECT_EQ(extract_trace(f, t, p), reference) << "t=" << t << " p=" << p;
    }
  }
}

TEST(ExtractTrace, NontrivialCharacterTwist) {
  // chi = chi_{-4}, chi(3) = -1: the stored a(t p^{2v}) carry chi(p)^v.
  const FormDescriptor desc = FormDescriptor::make(4, 3, {{1, 1}, {3, -1}});
  const int chi1_p = TwistCharacters(1, 3, 4, desc.character).chi1(3);
  const auto seq = twisted_sequence(1, 7, chi1_p, 3, 3, 2);
  std::vector<Rational> coeffs(82);
  coeffs[1] = seq[0];
  coeffs[9] = -seq[1];
  coeffs[81] = seq[2];
  const HalfIntegralForm form(desc, TruncatedSeries(coeffs));
  EXPECT_EQ(extract_trace(form, 1, 3), 7);
  EXPECT_TRUE(eigen_consistency(form, 3, 7, {1}, 1).consistent());
}

TEST(EigenConsistency, SyntheticZeroResiduals) {
  const auto form = synthetic_form(1, 3, 10, 2, 1);
  const auto report = eigen_consistency(form, 3, 10, {1}, 3);
  EXPECT_EQ(report.residuals.size(), 4u);
  EXPECT_TRUE(report.consistent());
}

TEST(EigenConsistency, PerturbationIsLocated) {
  const auto clean = synthetic_form(1, 3, 10, 2, 1);
  std::vector<Rational> coeffs(clean.series().coeffs().begin(), clean.series().coeffs().end());
  coeffs[81] += 1;  // a(1 * 3^4), relation index v = 2
  const HalfIntegralForm bad(clean.descriptor(), TruncatedSeries(coeffs));
  const auto report = eigen_consistency(bad, 3, 10, {1}, 3);
  const auto failures = report.failures();
  ASSERT_FALSE(failures.empty());
  for (const auto& r : failures) {
    // Relation m touches indices v = m - 1, m, m + 1 (m = 0 touches v = 0, 1).
    EXPECT_TRUE(r.m >= 1 && r.m <= 3) << r.m;
  }
}

TEST(EigenConsistency, FlagshipP3) {
  const auto& f = flagship();
  const auto ts = supported_squarefree(f, 30);
  for (std::int64_t t : ts) {
    const int depth = max_relation_depth(f, t, 3, 4);
    if (depth < 0) continue;
    EXPECT_TRUE(eigen_consistency(f, 3, 252, {t}, depth).consistent()) << t;
  }
  EXPECT_ERRC(eigen_consistency(f, 3, 252, {1}, 4), Errc::PrecisionExceeded);
}

TEST(SatakeData, Examples) {
  const auto zero = satake_data(0, 5, 3);
  EXPECT_EQ(zero.disc, -4 * hecke_norm(5, 3));
  EXPECT_EQ(zero.root_kind, RootKind::complex_pair);

  const auto real = satake_data(6, 2, 2);
  EXPECT_EQ(real.norm, 8);
  EXPECT_EQ(real.disc, 4);
  EXPECT_EQ(real.root_kind, RootKind::real_distinct);
  // Roots (6 +- 2)/2 = 4, 2 with product 8.
  EXPECT_EQ(real.root_product(), 8);
}

TEST(SatakeData, RootKindMatchesDiscriminant) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Rational trace = hiwsign::testing::random_rational(rng, 2000, 7);
    const auto local = satake_data(trace, 3, 3);
    EXPECT_EQ(local.root_product(), 243);
    const int s = sign(local.disc);
    EXPECT_EQ(local.root_kind, s > 0 ? RootKind::real_distinct : RootKind::complex_pair);
    if (local.root_kind == RootKind::complex_pair) {
      EXPECT_EQ(deligne_check(trace, 3, 3), DeligneStatus::strict);
    }
    EXPECT_NE(deligne_check(trace, 3, 3), DeligneStatus::extremal);
  }
}

TEST(DeligneCheck, Examples) {
  EXPECT_EQ(deligne_check(0, 7, 4), DeligneStatus::strict);
  EXPECT_EQ(deligne_check(6, 2, 2), DeligneStatus::violated);
  for (std::int64_t p : primes_up_to(100)) {
    if (p == 2) continue;
    EXPECT_EQ(deligne_check(extract_trace(flagship(), 1, p), p, 6), DeligneStatus::strict) << p;
  }
}

TEST(DeligneCheck, NeverExtremalAtRationalTraces) {
  // trace^2 = 4 p^{2k-1} has no rational solution; probe the integers
  // either side of the bound.
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (int k = 2; k <= 5; ++k) {
      const Integer sq = 4 * ipow(p, static_cast<unsigned long>(2 * k - 1));
      Integer root;
      mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
      EXPECT_EQ(deligne_check(Rational(root), p, k), DeligneStatus::strict);
      EXPECT_EQ(deligne_check(Rational(root + 1), p, k), DeligneStatus::violated);
    }
  }
}

TEST(Multiplicativity, Examples) {
  const auto& f = flagship();
  EXPECT_EQ(multiplicativity_check(f, 1, 1, 1), 0);
  EXPECT_EQ(multiplicativity_check(f, 1, 3, 5), 0);
  EXPECT_ERRC(multiplicativity_check(f, 1, 2, 4), Errc::NotCoprime);
  EXPECT_ERRC(multiplicativity_check(f, 1, 37, 41), Errc::PrecisionExceeded);
}

TEST(Multiplicativity, FlagshipOddPairs) {
  const auto& f = flagship();
  for (std::int64_t t : {1, 2, 3, 5, 6}) {
    for (std::int64_t m = 1; m <= 25; m += 2) {
      for (std::int64_t n = m; n <= 25; n += 2) {
        if (std::gcd(m, n) != 1 || t * m * m * n * n > f.prec()) continue;
        EXPECT_EQ(multiplicativity_check(f, t, m, n), 0) << t << " " << m << " " << n;
      }
    }
  }
}
