#include "padlab/lll.hpp"

#include <cmath>

namespace padlab {
namespace {

// log(e^a + e^b) without overflow.
double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -kInfinity) return a;
  return a + std::log1p(std::exp(b - a));
}

LllBudget make_budget(double log_p, double log_d1) {
  LllBudget budget;
  budget.log_p_bound = log_p;
  budget.log_d_plus_one = log_d1;
  budget.feasible = lll_feasible_log(log_p, log_d1);
  return budget;
}

}  // namespace

double LllBudget::p_bound() const { return std::exp(log_p_bound); }
double LllBudget::d_bound() const { return std::exp(log_d_plus_one) - 1.0; }

bool lll_feasible_log(double log_p_bound, double log_d_plus_one) {
  if (log_p_bound == -kInfinity) return true;
  return 1.0 + log_p_bound + log_d_plus_one < -kLllSlack;
}

bool lll_feasible(double p_bound, double d_bound) {
  require(p_bound >= 0.0 && d_bound >= 0.0, "LLL bounds must be nonnegative");
  return lll_feasible_log(std::log(p_bound), std::log1p(d_bound));
}

// ---- truncated exponential -----------------------------------------------

TexpSchedule::TexpSchedule(double N_, double r_, double eps_, double D_,
                           std::optional<std::size_t> m_)
    : N(N_), r(r_), eps(eps_), D(D_) {
  require(N >= 1.0, "doubling constant must be >= 1");
  require(r > 0.0, "net scale r must be positive");
  require(eps > 0.0, "eps must be positive");
  require(D > 0.0, "D must be positive");
  lambda = eps / (3.0 * r);
  M = (2.0 * D + 3.0) * r;
  l = 3.0 * r;
  c = 4.0 * D + 6.0;
  m = m_ ? *m_ : static_cast<std::size_t>(std::floor(std::log2(N))) + 1;
  require(m >= 1, "layer count must be >= 1");
}

LllBudget texp_csp_bounds(const TexpSchedule& s) {
  const double b = std::log2(s.N);
  const double log_N = std::log(s.N);
  const double log_D3 = std::log(s.D + 3.0);
  const double far = std::log(4.0) + 3.0 * log_N + b * log_D3 - (s.D - 1.5) * s.eps;
  const double near = std::log(12.0) + std::log(s.eps);
  const double log_p1 = log_add_exp(far, near);
  return make_budget(static_cast<double>(s.m) * log_p1, 4.0 * log_N + b * log_D3);
}

std::optional<MinDResult> find_min_D(double N, std::size_t m, double alpha) {
  require(N >= 1.0, "doubling constant must be >= 1");
  const double b = std::log2(N);
  require(static_cast<double>(m) > b, "find_min_D requires m > log2 N");
  require(alpha > 0.0, "eps exponent alpha must be positive");
  const double exponent = -b / static_cast<double>(m) - alpha;
  auto evaluate = [&](double D) {
    const double eps = std::pow(D + 3.0, exponent);
    return MinDResult{D, eps, texp_csp_bounds(TexpSchedule(N, 1.0, eps, D, m))};
  };
  constexpr double kCeiling = 1e100;
  double hi = 1.0;
  auto at_hi = evaluate(hi);
  while (!at_hi.budget.feasible) {
    hi *= 2.0;
    if (hi > kCeiling) return std::nullopt;
    at_hi = evaluate(hi);
  }
  if (hi == 1.0) return at_hi;
  double lo = hi / 2.0;  // infeasible
  for (int iter = 0; iter < 64 && hi / lo > 1.0 + 1e-9; ++iter) {
    const double mid = std::sqrt(lo * hi);
    auto at_mid = evaluate(mid);
    if (at_mid.budget.feasible) {
      hi = mid;
      at_hi = at_mid;
    } else {
      lo = mid;
    }
  }
  return at_hi;
}

// ---- truncated geometric -------------------------------------------------

TgeoSchedule::TgeoSchedule(double b_, double eps_) : b(b_), eps(eps_) {
  require(b > 0.0, "growth exponent b must be positive");
  require(eps > 0.0, "eps must be positive");
  m = static_cast<std::size_t>(std::floor(b)) + 1;
  const double md = static_cast<double>(m);
  alpha = (1.0 + eps) * md / (md - b);
  log_r_min = std::max({std::log(9.0), (2.0 / alpha) * std::log(32.0 * b * b + 40.0 * b),
                        8.0 * alpha * b, (2.0 / eps) * std::log(8000.0 * alpha * b / eps)});
}

double TgeoSchedule::log_p(double log_r) const {
  require(log_r > 0.0, "r must exceed 1");
  return std::log(8.0 * alpha * b) + std::log(log_r) - alpha * log_r;
}

double TgeoSchedule::log_M(double log_r) const {
  const double lp = log_p(log_r);
  require(lp < 0.0, "p must be below 1");
  const double log_value = std::log(4.0 * b) - lp + std::log(-lp);
  if (log_value < 53.0 * std::log(2.0)) {
    const double value = std::floor(4.0 * b * std::exp(-lp) * -lp);
    require(value >= 1.0, "M must be at least 1");
    return std::log(value);
  }
  return log_value;
}

LllBudget tgeo_csp_bounds_log(double b, double log_r, std::size_t m, double log_p,
                              double log_M) {
  require(b > 0.0, "growth exponent b must be positive");
  require(m >= 1, "layer count must be >= 1");
  require(log_r >= std::log(9.0), "tgeo bounds require r >= 9");
  require(log_p <= -std::log(4.0 * b + 5.0), "tgeo bounds require p <= 1/(4b + 5)");
  const double log_2M2r = std::log(2.0) + log_add_exp(log_M, log_r);
  return make_budget(static_cast<double>(m) * (std::log(20.0) + log_r + log_p), b * log_2M2r);
}

LllBudget tgeo_csp_bounds(double b, double r, std::size_t m, double p, double M) {
  require(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
  require(M >= 1.0, "M must be at least 1");
  return tgeo_csp_bounds_log(b, std::log(r), m, std::log(p), std::log(M));
}

LllBudget tgeo_schedule_bounds(const TgeoSchedule& s, double log_r) {
  return tgeo_csp_bounds_log(s.b, log_r, s.m, s.log_p(log_r), s.log_M(log_r));
}

// ---- CSP -----------------------------------------------------------------

CspInstance texp_csp(const Net& net, const TexpSchedule& schedule) {
  return CspInstance{net, schedule.m, schedule.law(), schedule.probe_radius(),
                     schedule.domain_radius()};
}

CspInstance tgeo_csp(const Net& net, const TgeoParams& law, std::size_t m, double r) {
  return CspInstance{net, m, law, r, static_cast<double>(law.M) + r};
}

}  // namespace padlab
