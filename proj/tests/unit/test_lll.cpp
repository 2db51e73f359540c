#include <gtest/gtest.h>

#include <cmath>

#include <padlab/fixtures.hpp>
#include <padlab/lll.hpp>

#include "lll_oracle.hpp"
#include "test_support.hpp"

using namespace padlab;
using padlab::testing::Big;
using padlab::testing::relative_error;

TEST(LllFeasible, HandExamples) {
  EXPECT_TRUE(lll_feasible(0.1, 2));
  EXPECT_FALSE(lll_feasible(0.5, 1));
  EXPECT_TRUE(lll_feasible(0.0, 1e300));
  EXPECT_THROW(lll_feasible(-0.1, 1), PreconditionError);
}

TEST(LllFeasible, BoundaryResolvesTowardInfeasible) {
  const double d = 9;
  const double p = 1.0 / (std::exp(1.0) * (d + 1));
  EXPECT_FALSE(lll_feasible(p, d));
  EXPECT_FALSE(lll_feasible(p * (1 - 1e-13), d));
  EXPECT_TRUE(lll_feasible(p * (1 - 1e-9), d));
}

TEST(LllFeasible, AgreesWithExtendedPrecision) {
  Rng rng(2024);
  const Big threshold = boost::multiprecision::exp(Big(-kLllSlack));
  int feasible = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double d = std::floor(std::pow(10.0, 6.0 * rng.uniform()));
    double p;
    if (trial % 2 == 0) {
      p = std::pow(10.0, -8.0 * rng.uniform());
    } else {
      // Near the boundary, but never within the double rounding band.
      const double rel = std::pow(10.0, -2.0 - 7.0 * rng.uniform()) * (rng.below(2) ? 1 : -1);
      p = (1 + rel) / (std::exp(1.0) * (d + 1));
    }
    const Big product = boost::multiprecision::exp(Big(1)) * Big(p) * (Big(d) + 1);
    const bool oracle = product < threshold;
    ASSERT_EQ(lll_feasible(p, d), oracle) << "p=" << p << " d=" << d;
    feasible += oracle;
  }
  EXPECT_GT(feasible, 100);
  EXPECT_LT(feasible, 900);
}

TEST(TexpSchedule, StoredParameters) {
  const TexpSchedule s(3, 2, 0.05, 20);
  EXPECT_EQ(s.lambda, 0.05 / 6.0);
  EXPECT_EQ(s.M, 43.0 * 2);
  EXPECT_EQ(s.l, 6.0);
  EXPECT_EQ(s.c, 86.0);
  EXPECT_EQ(s.m, 2u);
  EXPECT_EQ(TexpSchedule(8, 1, 0.1, 5).m, 4u);
  EXPECT_EQ(TexpSchedule(8, 1, 0.1, 5, 2).m, 2u);
  EXPECT_EQ(s.probe_radius(), 6.0);
  EXPECT_EQ(s.domain_radius(), 92.0);
  EXPECT_EQ(s.law().lambda, s.lambda);
  EXPECT_EQ(2 * s.M, s.c * s.r);
}

TEST(TexpBounds, WorkedExampleMatchesOracle) {
  const double D = 1e20;
  const double eps = std::pow(D + 3, -0.9);
  const TexpSchedule s(2, 1, eps, D, 2);
  const auto budget = texp_csp_bounds(s);
  EXPECT_TRUE(budget.feasible);
  const auto oracle = padlab::testing::texp_oracle(2, eps, D, 2);
  EXPECT_LT(oracle.product(), Big(1));
  EXPECT_LT(relative_error(budget.log_p_bound, oracle.log_p()), 1e-9);
  EXPECT_LT(relative_error(budget.log_d_plus_one, oracle.log_d_plus_one()), 1e-9);
  EXPECT_LT(relative_error(budget.margin(), oracle.margin()), 1e-9);
}

TEST(TexpBounds, EpsOneIsHopeless) {
  const auto budget = texp_csp_bounds(TexpSchedule(2, 1, 1, 10));
  EXPECT_GE(budget.p_bound(), 12.0);
  EXPECT_FALSE(budget.feasible);
}

TEST(TexpBounds, MatchOracleAcrossParameters) {
  for (double N : {2.0, 3.0, 8.0})
    for (double D : {5.0, 1e3, 1e9})
      for (double eps : {0.01, 0.3}) {
        const auto m = static_cast<std::size_t>(std::floor(std::log2(N))) + 1;
        const auto budget = texp_csp_bounds(TexpSchedule(N, 1, eps, D, m));
        const auto oracle = padlab::testing::texp_oracle(N, eps, D, m);
        EXPECT_LT(relative_error(budget.log_p_bound, oracle.log_p()), 1e-9) << N << " " << D;
        EXPECT_LT(relative_error(budget.log_d_plus_one, oracle.log_d_plus_one()), 1e-9);
      }
}

TEST(TexpBounds, FeasibilityIsMonotoneInD) {
  for (double N : {2.0, 4.0, 8.0}) {
    const double b = std::log2(N);
    const auto m = static_cast<std::size_t>(std::floor(b)) + 1;
    // alpha must stay below 1 - b/m or eps * D never grows; this gives 0.4 at N = 2.
    const double alpha = 0.8 * (1 - b / static_cast<double>(m));
    const double exponent = -b / static_cast<double>(m) - alpha;
    bool seen_feasible = false;
    for (int k = 1; k <= 90; ++k) {
      const double D = std::pow(10.0, k);
      const bool here = texp_csp_bounds(TexpSchedule(N, 1, std::pow(D + 3, exponent), D, m)).feasible;
      const double D10 = 10 * D;
      const bool next = texp_csp_bounds(TexpSchedule(N, 1, std::pow(D10 + 3, exponent), D10, m)).feasible;
      if (here) EXPECT_TRUE(next) << "N=" << N << " D=1e" << k;
      seen_feasible |= here;
    }
    EXPECT_TRUE(seen_feasible) << N;
  }
}

TEST(TgeoBounds, WorkedExample) {
  const auto budget = tgeo_csp_bounds(1, 9, 2, 1.0 / 400, 9585);
  EXPECT_NEAR(budget.p_bound(), 0.2025, 1e-12);
  EXPECT_NEAR(budget.d_bound(), 2 * 9585 + 2 * 9 - 1, 1e-8);
  EXPECT_FALSE(budget.feasible);
  EXPECT_GE(tgeo_csp_bounds(1, 9, 1, 0.1, 100).p_bound(), 1.0);
  EXPECT_THROW(tgeo_csp_bounds(1, 9, 1, 0.2, 100), PreconditionError);
  EXPECT_THROW(tgeo_csp_bounds(1, 8, 1, 0.01, 100), PreconditionError);
}

TEST(TgeoSchedule, FeasibleAtRMinAgainstOracle) {
  const TgeoSchedule s(1, 0.1);
  EXPECT_EQ(s.m, 2u);
  EXPECT_NEAR(s.alpha, 2.2, 1e-15);
  EXPECT_LT(relative_error(s.log_r_min, padlab::testing::tgeo_log_r_min_oracle(1, 0.1)), 1e-12);
  const auto budget = tgeo_schedule_bounds(s, s.log_r_min);
  EXPECT_TRUE(budget.feasible);
  const auto chain = padlab::testing::tgeo_oracle(1, 0.1, s.log_r_min);
  EXPECT_LT(chain.budget.product(), Big(1));
  EXPECT_LT(relative_error(s.log_p(s.log_r_min), static_cast<double>(boost::multiprecision::log(chain.p))), 1e-9);
  EXPECT_LT(relative_error(s.log_M(s.log_r_min), static_cast<double>(boost::multiprecision::log(chain.M))), 1e-9);
  EXPECT_LT(relative_error(budget.log_p_bound, chain.budget.log_p()), 1e-9);
  EXPECT_LT(relative_error(budget.log_d_plus_one, chain.budget.log_d_plus_one()), 1e-9);
  EXPECT_LT(relative_error(budget.margin(), chain.budget.margin()), 1e-9);
}

TEST(TgeoSchedule, ProbabilityBelowRegimeThresholdFromRMin) {
  for (double b : {0.5, 1.0, 1.5, 2.0})
    for (double eps : {0.1, 0.5}) {
      const TgeoSchedule s(b, eps);
      EXPECT_LT(relative_error(s.log_r_min, padlab::testing::tgeo_log_r_min_oracle(b, eps)), 1e-12);
      for (double factor : {1.0, 1.5, 4.0}) {
        const double log_r = s.log_r_min * factor;
        EXPECT_LE(s.log_p(log_r), -std::log(4 * b + 5)) << "b=" << b << " eps=" << eps;
        EXPECT_TRUE(tgeo_schedule_bounds(s, log_r).feasible) << "b=" << b << " eps=" << eps;
      }
    }
}

TEST(TgeoSchedule, ExactFloorForRepresentableM) {
  const TgeoSchedule s(1, 0.1);
  const double log_r = std::log(50.0);
  const double p = std::exp(s.log_p(log_r));
  ASSERT_LT(p, 1.0 / 9.0);
  EXPECT_DOUBLE_EQ(std::exp(s.log_M(log_r)), std::floor(4 / p * std::log(1 / p)));
}

TEST(FindMinD, WorkedExample) {
  const auto result = find_min_D(2, 2, 0.4);
  ASSERT_TRUE(result.has_value());
  EXPECT_LE(result->D, 1e20);
  EXPECT_TRUE(result->budget.feasible);
  EXPECT_EQ(result->eps, std::pow(result->D + 3, -0.9));
  const double quarter = result->D / 4;
  EXPECT_FALSE(texp_csp_bounds(TexpSchedule(2, 1, std::pow(quarter + 3, -0.9), quarter, 2)).feasible);
  const auto oracle = padlab::testing::texp_oracle(2, result->eps, result->D, 2);
  EXPECT_LT(oracle.product(), Big(1));
  EXPECT_THROW(find_min_D(2, 1, 0.4), PreconditionError);
}

namespace {

CspInstance dense_texp_csp(std::size_t n) {
  const auto space = integer_segment(n);
  const Net net = build_net(space, 3, 3);
  return texp_csp(net, TexpSchedule(3, 3, 0.05, 20, 2));
}

CspInstance easy_tgeo_csp(std::size_t n, std::size_t m) {
  const auto space = integer_segment(n);
  return tgeo_csp(build_net(space, 1, 1), TgeoParams(1.0 / 400, 400), m, 3);
}

}  // namespace

TEST(MoserTardos, EmptyNet) {
  const CspInstance csp{Net(), 2, TgeoParams(0.5, 4), 1, 5};
  const auto run = moser_tardos(csp, 1);
  EXPECT_TRUE(run.success);
  EXPECT_EQ(run.rounds, 0u);
  ASSERT_EQ(run.radii.size(), 2u);
  EXPECT_TRUE(run.radii[0].t.empty());
}

TEST(MoserTardos, WholeSpaceCluster) {
  const auto space = integer_segment(10);
  const Net net(space, {5}, 6, 6);
  const CspInstance csp{net, 1, TexpParams(5, 20, 30), 3, 33};
  const auto cert = certify_decomposition(csp, 4);
  EXPECT_TRUE(cert.run.success);
  EXPECT_EQ(cert.run.rounds, 0u);
  EXPECT_TRUE(cert.passed);
  ASSERT_EQ(cert.decomposition.layers[0].size(), 1u);
  EXPECT_EQ(cert.decomposition.layers[0][0].size(), 11u);
  EXPECT_EQ(cert.decomposition.D, 60.0);
}

TEST(MoserTardos, SuccessImpliesVerification) {
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    for (std::size_t m : {2u, 3u}) {
      const auto csp = easy_tgeo_csp(2000, m);
      const auto cert = certify_decomposition(csp, seed);
      if (cert.run.success) {
        ++successes;
        ASSERT_TRUE(cert.report.passed) << "seed " << seed << " m " << m;
        EXPECT_TRUE(cert.passed);
      }
      EXPECT_EQ(cert.run.violated_per_round.size(), cert.run.rounds);
      EXPECT_EQ(cert.run.resampled.size(), cert.run.rounds);
    }
  EXPECT_GE(successes, 15);
}

TEST(MoserTardos, SingleLayerIsNeverAFalsePass) {
  // One partition of a path into clusters of diameter <= 2M < diameter always
  // cuts some probe ball, so no single layer can be padded.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto space = integer_segment(400);
    const auto csp = tgeo_csp(build_net(space, 1, 1), TgeoParams(0.01, 60), 1, 3);
    const auto cert = certify_decomposition(csp, seed, 200);
    EXPECT_FALSE(cert.run.success);
    EXPECT_FALSE(cert.report.passed);
    EXPECT_FALSE(cert.passed);
    EXPECT_FALSE(cert.run.residual.empty());
    EXPECT_FALSE(cert.report.witnesses.empty());
  }
}

TEST(MoserTardos, RoundsAreLocal) {
  const auto csp = dense_texp_csp(600);
  const double M = law_upper(csp.law);
  const auto before_run = moser_tardos(csp, 7, 1);
  ASSERT_FALSE(before_run.success);
  auto before = carve_layers(csp, before_run);
  for (std::size_t k = 1; k <= 15; ++k) {
    const auto after_run = moser_tardos(csp, 7, k + 1);
    ASSERT_EQ(after_run.rounds, k + 1);
    const Index center = after_run.resampled[k];
    const auto after = carve_layers(csp, after_run);
    for (std::size_t i = 0; i < csp.m; ++i)
      for (Index p = 0; p < csp.net.space().size(); ++p)
        if (before[i].center_of(p) != after[i].center_of(p))
          ASSERT_LE(csp.net.space().dist(p, center), 2 * M + csp.domain_radius)
              << "round " << k << " layer " << i << " point " << p;
    before = after;
  }
}

TEST(MoserTardos, DeterministicAndThreadIndependent) {
  const auto csp = dense_texp_csp(600);
  const auto a = moser_tardos(csp, 11, 40, 1);
  const auto b = moser_tardos(csp, 11, 40, 3);
  EXPECT_EQ(a.resampled, b.resampled);
  EXPECT_EQ(a.violated_per_round, b.violated_per_round);
  EXPECT_EQ(a.residual, b.residual);
  ASSERT_EQ(a.radii.size(), b.radii.size());
  for (std::size_t i = 0; i < a.radii.size(); ++i) EXPECT_EQ(a.radii[i].t, b.radii[i].t);
  EXPECT_NE(moser_tardos(csp, 12, 40).resampled, a.resampled);
}

TEST(MoserTardos, DefaultRoundBudget) {
  const auto csp = dense_texp_csp(60);
  EXPECT_EQ(moser_tardos(csp, 1, 0).max_rounds, 100 * csp.net.size());
  CspInstance bad = csp;
  bad.law = TexpParams(0.1, 1, 10);
  EXPECT_THROW(moser_tardos(bad, 1), PreconditionError);
}
