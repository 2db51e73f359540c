#include <gtest/gtest.h>

#include <cmath>

#include <padlab/sampler.hpp>

#include "test_support.hpp"

using namespace padlab;

namespace {

// Composite Simpson integration of the Texp density over [a, b].
double integrate_density(const TexpParams& law, double a, double b) {
  const int n = 20000;
  const double h = (b - a) / n;
  const double norm = std::exp(-law.lambda * law.l) - std::exp(-law.lambda * law.M);
  auto f = [&](double z) { return law.lambda * std::exp(-law.lambda * z) / norm; };
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

}  // namespace

TEST(Texp, TailMatchesNumericIntegration) {
  const TexpParams law(1, 1, 3);
  EXPECT_NEAR(texp_tail(law, 2), 0.268941, 1e-5);
  EXPECT_NEAR(texp_tail(law, 2), integrate_density(law, 2, 3), 1e-10);
  EXPECT_EQ(texp_tail(law, 1), 1.0);
  EXPECT_EQ(texp_tail(law, 3), 0.0);
  EXPECT_THROW(texp_tail(law, 0.5), PreconditionError);
}

TEST(Texp, TailIsMonotone) {
  const TexpParams law(0.3, 2, 40);
  double previous = 1.0;
  for (int i = 0; i <= 400; ++i) {
    const double v = texp_tail(law, 2 + 38.0 * i / 400.0);
    EXPECT_LE(v, previous);
    previous = v;
  }
}

TEST(Texp, ConditionalMatchesTailRatio) {
  const TexpParams law(1, 1, 10);
  EXPECT_NEAR(texp_conditional(law, 2, 1), (1 - std::exp(-1.0)) / (1 - std::exp(-8.0)), 1e-12);
  EXPECT_NEAR(texp_conditional(law, 2, 1), 0.632332, 1e-5);
  EXPECT_NEAR(texp_conditional(law, 2, 1),
              (texp_tail(law, 2) - texp_tail(law, 3)) / texp_tail(law, 2), 1e-10);
  EXPECT_EQ(texp_conditional(law, 2, 0), 0.0);
}

TEST(Texp, ConditionalIsStableForTinyRates) {
  const TexpParams law(1e-9, 1, 10);
  // Uniform limit: beta / (M - alpha).
  EXPECT_NEAR(texp_conditional(law, 2, 1), 1.0 / 8.0, 1e-8);
}

TEST(Texp, LemmaBoundsHoldOnRegimeGrid) {
  const auto sweep = padlab::testing::texp_bound_sweep();
  EXPECT_GE(sweep.tail_checks, 400u);
  EXPECT_GE(sweep.conditional_checks, 400u);
  EXPECT_EQ(sweep.tail_violations, 0u);
  EXPECT_EQ(sweep.conditional_violations, 0u);
}

TEST(Texp, RegimeFlag) {
  EXPECT_TRUE(TexpParams(0.1, 3, 50).lemma_regime());
  EXPECT_FALSE(TexpParams(0.01, 3, 50).lemma_regime());
  EXPECT_FALSE(TexpParams(1, 3, 50).lemma_regime());
  EXPECT_THROW(TexpParams(0, 1, 2), PreconditionError);
  EXPECT_THROW(TexpParams(1, 2, 2), PreconditionError);
}

TEST(Texp, QuantileEndpoints) {
  const TexpParams law(0.1, 3, 50);
  EXPECT_EQ(texp_quantile(law, 0.0), 3.0);
  EXPECT_NEAR(texp_quantile(law, std::nextafter(1.0, 0.0)), 50.0, 1e-9);
  for (double u : {0.1, 0.5, 0.9}) EXPECT_NEAR(texp_cdf(law, texp_quantile(law, u)), u, 1e-12);
}

TEST(Texp, SamplesFollowCdf) {
  EXPECT_LT(padlab::testing::texp_ks_distance(TexpParams(0.1, 3, 50), 100000, 1), 0.01);
}

TEST(Tgeo, PmfExamples) {
  const TgeoParams law(0.5, 5);
  EXPECT_DOUBLE_EQ(tgeo_pmf(law, 2), 0.25);
  EXPECT_DOUBLE_EQ(tgeo_pmf(law, 5), 0.0625);
  EXPECT_DOUBLE_EQ(tgeo_tail(law, 3), 0.25);
  EXPECT_DOUBLE_EQ(tgeo_tail(law, 1), 1.0);
  EXPECT_DOUBLE_EQ(tgeo_conditional(law, 1, 1), 0.75);
  EXPECT_THROW(tgeo_pmf(law, 6), PreconditionError);
  EXPECT_THROW(tgeo_conditional(law, 2, 3), PreconditionError);
}

TEST(Tgeo, SummationOracles) {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const double p = 0.01 + 0.98 * rng.uniform();
    const auto M = static_cast<std::int64_t>(2 + rng.below(200));
    const TgeoParams law(p, M);
    double total = 0.0;
    std::vector<double> suffix(static_cast<std::size_t>(M) + 2, 0.0);
    for (std::int64_t n = M; n >= 1; --n)
      suffix[static_cast<std::size_t>(n)] = suffix[static_cast<std::size_t>(n) + 1] + tgeo_pmf(law, n);
    for (std::int64_t n = 1; n <= M; ++n) total += tgeo_pmf(law, n);
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (std::int64_t n = 1; n <= M; ++n)
      EXPECT_NEAR(tgeo_tail(law, n), suffix[static_cast<std::size_t>(n)], 1e-12);
    if (M >= 3) {
      const auto m = static_cast<std::int64_t>(1 + rng.below(static_cast<std::uint64_t>(M - 2)));
      const auto n = static_cast<std::int64_t>(1 + rng.below(static_cast<std::uint64_t>(M - m - 1)));
      const double window = suffix[static_cast<std::size_t>(m)] - suffix[static_cast<std::size_t>(m + n + 1)];
      EXPECT_NEAR(tgeo_conditional(law, m, n), window / suffix[static_cast<std::size_t>(m)], 1e-10);
    }
  }
}

TEST(Tgeo, ConditionalFirstOrderBound) {
  const TgeoParams law(1e-6, 1000000);
  for (std::int64_t n : {1, 5, 50, 500}) EXPECT_LT(tgeo_conditional(law, 3, n), (n + 1) * 1e-6 + 1e-12);
}

TEST(Tgeo, QuantileEndpoints) {
  const TgeoParams law(0.05, 100);
  EXPECT_EQ(tgeo_quantile(law, 0.0), 1);
  EXPECT_EQ(tgeo_quantile(law, std::nextafter(1.0, 0.0)), 100);
  EXPECT_EQ(tgeo_quantile(law, 0.04), 1);
  EXPECT_EQ(tgeo_quantile(law, 0.06), 2);
}

TEST(Tgeo, SampleFrequenciesWithinFourStandardErrors) {
  EXPECT_LT(padlab::testing::tgeo_worst_z(TgeoParams(0.05, 100), 100000, 2), 4.0);
}

TEST(Samplers, DeterministicInSeed) {
  const RadiusLaw texp = TexpParams(0.2, 1, 30);
  const RadiusLaw tgeo = TgeoParams(0.1, 40);
  for (const auto& law : {texp, tgeo}) {
    Rng a(7), b(7), c(8);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
      const double x = sample_radius(law, a);
      ASSERT_EQ(x, sample_radius(law, b));
      differs |= x != sample_radius(law, c);
      ASSERT_GE(x, law_lower(law));
      ASSERT_LE(x, law_upper(law));
    }
    EXPECT_TRUE(differs);
  }
}
