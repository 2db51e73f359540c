#include "padlab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace padlab {

TexpParams::TexpParams(double lambda_, double l_, double M_) : lambda(lambda_), l(l_), M(M_) {
  require(lambda > 0.0 && std::isfinite(lambda), "Texp rate lambda must be positive");
  require(l > 0.0 && l < M && std::isfinite(M), "Texp truncation requires 0 < l < M");
}

TgeoParams::TgeoParams(double p_, std::int64_t M_) : p(p_), M(M_) {
  require(p > 0.0 && p < 1.0, "Tgeo parameter p must lie in (0, 1)");
  require(M >= 2, "Tgeo truncation M must be >= 2");
}

namespace {
// -expm1(-lambda * width): the normalizing mass of [l, l + width], stable for small widths.
double one_minus_exp(double lambda, double width) { return -std::expm1(-lambda * width); }
}  // namespace

double texp_cdf(const TexpParams& law, double z) {
  if (z <= law.l) return 0.0;
  if (z >= law.M) return 1.0;
  return one_minus_exp(law.lambda, z - law.l) / one_minus_exp(law.lambda, law.M - law.l);
}

double texp_tail(const TexpParams& law, double beta) {
  require(beta >= law.l && beta <= law.M, "texp_tail requires l <= beta <= M");
  const double total = one_minus_exp(law.lambda, law.M - law.l);
  const double upper = std::expm1(-law.lambda * (beta - law.l)) -
                       std::expm1(-law.lambda * (law.M - law.l));
  return std::clamp(upper / total, 0.0, 1.0);
}

double texp_conditional(const TexpParams& law, double alpha, double beta) {
  require(alpha >= law.l, "texp_conditional requires alpha >= l");
  require(beta >= 0.0, "texp_conditional requires beta >= 0");
  require(alpha + beta < law.M, "texp_conditional requires alpha + beta < M");
  return one_minus_exp(law.lambda, beta) / one_minus_exp(law.lambda, law.M - alpha);
}

double texp_quantile(const TexpParams& law, double u) {
  const double total = one_minus_exp(law.lambda, law.M - law.l);
  const double z = law.l - std::log1p(-u * total) / law.lambda;
  return std::clamp(z, law.l, law.M);
}

double sample_texp(const TexpParams& law, Rng& rng) { return texp_quantile(law, rng.uniform()); }

namespace {
void check_tgeo_support(const TgeoParams& law, std::int64_t n) {
  require(n >= 1 && n <= law.M,
          "Tgeo value " + std::to_string(n) + " outside {1.." + std::to_string(law.M) + "}");
}
}  // namespace

double tgeo_pmf(const TgeoParams& law, std::int64_t n) {
  check_tgeo_support(law, n);
  const double q = 1.0 - law.p;
  if (n == law.M) return std::pow(q, static_cast<double>(law.M - 1));
  return law.p * std::pow(q, static_cast<double>(n - 1));
}

double tgeo_tail(const TgeoParams& law, std::int64_t n) {
  check_tgeo_support(law, n);
  return std::pow(1.0 - law.p, static_cast<double>(n - 1));
}

double tgeo_conditional(const TgeoParams& law, std::int64_t m, std::int64_t n) {
  require(m >= 1 && n >= 1, "tgeo_conditional requires m, n >= 1");
  require(m + n < law.M, "tgeo_conditional requires m + n < M");
  return -std::expm1(static_cast<double>(n + 1) * std::log1p(-law.p));
}

std::int64_t tgeo_quantile(const TgeoParams& law, double u) {
  const double steps = std::floor(std::log1p(-u) / std::log1p(-law.p));
  if (!(steps < static_cast<double>(law.M - 1))) return law.M;
  return static_cast<std::int64_t>(steps) + 1;
}

std::int64_t sample_tgeo(const TgeoParams& law, Rng& rng) {
  return tgeo_quantile(law, rng.uniform());
}

double law_lower(const RadiusLaw& law) {
  return std::visit([](const auto& p) -> double {
    if constexpr (std::is_same_v<std::decay_t<decltype(p)>, TexpParams>) return p.l;
    else return 1.0;
  }, law);
}

double law_upper(const RadiusLaw& law) {
  return std::visit([](const auto& p) -> double { return static_cast<double>(p.M); }, law);
}

double sample_radius(const RadiusLaw& law, Rng& rng) {
  return std::visit([&](const auto& p) -> double {
    if constexpr (std::is_same_v<std::decay_t<decltype(p)>, TexpParams>) return sample_texp(p, rng);
    else return static_cast<double>(sample_tgeo(p, rng));
  }, law);
}

}  // namespace padlab
