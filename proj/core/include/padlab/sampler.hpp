#pragma once

#include <cstdint>
#include <variant>

#include "padlab/rng.hpp"
#include "padlab/types.hpp"

namespace padlab {

/// Truncated exponential law Texp(lambda, M, l) on [l, M] with density
/// lambda e^{-lambda z} / (e^{-lambda l} - e^{-lambda M}).
struct TexpParams {
  double lambda;
  double l;
  double M;

  TexpParams(double lambda, double l, double M);

  /// (M - l) lambda >= 2 and l lambda <= 1: the hypotheses under which the
  /// tail and conditional bounds hold. Recorded, never enforced.
  bool lemma_regime() const { return (M - l) * lambda >= 2.0 && l * lambda <= 1.0; }
};

/// Truncated geometric law Tgeo(p, M) on {1..M}: mass p(1-p)^{n-1} for n < M
/// and (1-p)^{M-1} at n = M.
struct TgeoParams {
  double p;
  std::int64_t M;

  TgeoParams(double p, std::int64_t M);
};

double texp_cdf(const TexpParams& law, double z);

/// P[t >= beta]. Requires l <= beta <= M.
double texp_tail(const TexpParams& law, double beta);

/// P[t <= alpha + beta | t >= alpha] = (1 - e^{-lambda beta}) / (1 - e^{-lambda (M - alpha)}).
/// Requires alpha >= l, beta >= 0 and alpha + beta < M.
double texp_conditional(const TexpParams& law, double alpha, double beta);

/// Inverse CDF; u in [0, 1) maps into [l, M].
double texp_quantile(const TexpParams& law, double u);
double sample_texp(const TexpParams& law, Rng& rng);

double tgeo_pmf(const TgeoParams& law, std::int64_t n);
/// P[t >= n] = (1-p)^{n-1}.
double tgeo_tail(const TgeoParams& law, std::int64_t n);
/// P[t <= m + n | t >= m] = 1 - (1-p)^{n+1}. Requires m, n >= 1, m + n < M.
double tgeo_conditional(const TgeoParams& law, std::int64_t m, std::int64_t n);

/// Smallest n with P[t <= n] > u, capped at M.
std::int64_t tgeo_quantile(const TgeoParams& law, double u);
std::int64_t sample_tgeo(const TgeoParams& law, Rng& rng);

/// A carving-radius distribution.
using RadiusLaw = std::variant<TexpParams, TgeoParams>;

double law_lower(const RadiusLaw& law);
double law_upper(const RadiusLaw& law);
double sample_radius(const RadiusLaw& law, Rng& rng);

}  // namespace padlab
