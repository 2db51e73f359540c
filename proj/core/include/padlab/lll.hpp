#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "padlab/carving.hpp"
#include "padlab/decomposition.hpp"
#include "padlab/net.hpp"
#include "padlab/sampler.hpp"

namespace padlab {

/// Relative slack below which the LLL inequality is treated as failing.
inline constexpr double kLllSlack = 1e-12;

/// Bounds p (violation probability) and d (dependency degree) of a CSP,
/// held as natural logarithms so astronomically large schedules stay finite.
struct LllBudget {
  double log_p_bound = 0.0;
  /// log(d + 1).
  double log_d_plus_one = 0.0;
  bool feasible = false;

  double p_bound() const;
  /// May be +infinity when the bound is not representable.
  double d_bound() const;
  /// log(e * p * (d + 1)); the LLL condition is margin < 0.
  double margin() const { return 1.0 + log_p_bound + log_d_plus_one; }
};

/// e * p * (d + 1) < 1, evaluated as 1 + log p + log(d + 1) < -kLllSlack so
/// that values within the slack of the boundary count as infeasible.
bool lll_feasible(double p_bound, double d_bound);
bool lll_feasible_log(double log_p_bound, double log_d_plus_one);

/// Parameters of the truncated-exponential construction at net scale r:
/// lambda = eps / 3r, M = (2D + 3) r, l = 3r, c = 4D + 6, m = floor(log2 N) + 1
/// unless given explicitly.
struct TexpSchedule {
  double N;
  double r;
  double eps;
  double D;
  double lambda;
  double M;
  double l;
  std::size_t m;
  double c;

  TexpSchedule(double N, double r, double eps, double D, std::optional<std::size_t> m = {});

  TexpParams law() const { return TexpParams(lambda, l, M); }
  double probe_radius() const { return 3.0 * r; }
  double domain_radius() const { return M + 3.0 * r; }
};

/// p(A_m) <= (4 N^3 (D+3)^{log2 N} e^{-(D - 3/2) eps} + 12 eps)^m and
/// d(A_m) <= N^4 (D+3)^{log2 N} - 1.
LllBudget texp_csp_bounds(const TexpSchedule& schedule);

/// Parameters of the truncated-geometric construction for growth exponent b.
/// m = floor(b) + 1, alpha = (1 + eps) m / (m - b); p and M depend on r and
/// are exposed through their logarithms since both leave double range for
/// r near r_min.
struct TgeoSchedule {
  double b;
  double eps;
  std::size_t m;
  double alpha;
  /// log max{9, (32b^2 + 40b)^{2/alpha}, e^{8 alpha b}, (8000 alpha b / eps)^{2/eps}}.
  double log_r_min;

  TgeoSchedule(double b, double eps);

  /// log p with p = 8 alpha b ln r / r^alpha.
  double log_p(double log_r) const;
  /// log M with M = floor(4b (1/p) ln(1/p)). Exact floor whenever M < 2^53.
  double log_M(double log_r) const;
};

/// p(A_m) <= (20 r p)^m and d(A_m) <= (2M + 2r)^b - 1.
/// Requires p <= 1/(4b + 5) and r >= 9.
LllBudget tgeo_csp_bounds(double b, double r, std::size_t m, double p, double M);
/// Same bounds from log r, log p and log M.
LllBudget tgeo_csp_bounds_log(double b, double log_r, std::size_t m, double log_p, double log_M);
/// The schedule's budget at radius r = exp(log_r).
LllBudget tgeo_schedule_bounds(const TgeoSchedule& schedule, double log_r);

struct MinDResult {
  double D;
  double eps;
  LllBudget budget;
};

/// Smallest D (to within a factor 2, refined by bisection) such that
/// texp_csp_bounds is feasible with eps = (D + 3)^{-b/m - alpha}, b = log2 N.
/// Requires m > log2 N. Returns nullopt when no D <= 1e100 works.
std::optional<MinDResult> find_min_D(double N, std::size_t m, double alpha);

/// One constraint per net member u: B_{probe_radius}(u) must be uncut in at
/// least one of m independently carved layers. Its variables are the radii,
/// in all m layers, of the net members within domain_radius of u.
struct CspInstance {
  Net net;
  std::size_t m = 1;
  RadiusLaw law = TgeoParams(0.5, 2);
  double probe_radius = 0.0;
  double domain_radius = 0.0;
};

/// Constraint set of a truncated-exponential schedule: probe 3r, domain M + 3r.
CspInstance texp_csp(const Net& net, const TexpSchedule& schedule);
/// Truncated-geometric constraints: probe r, domain M + r.
CspInstance tgeo_csp(const Net& net, const TgeoParams& law, std::size_t m, double r);

struct MoserTardosResult {
  bool success = false;
  std::size_t rounds = 0;
  std::size_t max_rounds = 0;
  std::size_t initial_violations = 0;
  /// Violated-constraint count after each round.
  std::vector<std::size_t> violated_per_round;
  /// Net member whose constraint was resampled in each round.
  std::vector<Index> resampled;
  /// Final radii, one assignment per layer.
  std::vector<RadiusAssignment> radii;
  Coloring coloring;
  /// Constraints still violated at the end (empty on success).
  std::vector<Index> residual;
};

/// Moser-Tardos resampling. Colors the net graph greedily in a seeded random
/// member order, draws every radius of every layer from the law, then
/// repeatedly takes a uniformly random violated constraint and redraws all
/// radii in its domain across all layers, until none is violated or
/// max_rounds is reached (0 means 100 * number of constraints).
/// Deterministic in seed.
MoserTardosResult moser_tardos(const CspInstance& csp, std::uint64_t seed,
                               std::size_t max_rounds = 0, unsigned threads = 1);

/// Carves each layer of a Moser-Tardos result.
std::vector<PartitionLayer> carve_layers(const CspInstance& csp, const MoserTardosResult& run);

struct Certificate {
  MoserTardosResult run;
  PaddedDecomposition decomposition;
  VerificationReport report;
  /// run.success and report.passed.
  bool passed = false;
};

/// Runs moser_tardos, carves the final radii and verifies the claimed
/// (probe_radius, 2M)-padded decomposition. The verification is done even
/// when resampling fails, so a failed run comes with concrete witnesses.
Certificate certify_decomposition(const CspInstance& csp, std::uint64_t seed,
                                  std::size_t max_rounds = 0, unsigned threads = 1);

}  // namespace padlab
