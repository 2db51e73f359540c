#pragma once

// Extended-precision (50 decimal digits) re-derivations of the LLL budgets,
// evaluated directly rather than in log space.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstddef>

namespace padlab::testing {

using Big = boost::multiprecision::cpp_bin_float_50;

struct BigBudget {
  Big p;
  Big d_plus_one;
  Big product() const { return boost::multiprecision::exp(Big(1)) * p * d_plus_one; }
  double log_p() const { return static_cast<double>(boost::multiprecision::log(p)); }
  double log_d_plus_one() const { return static_cast<double>(boost::multiprecision::log(d_plus_one)); }
  double margin() const { return static_cast<double>(boost::multiprecision::log(product())); }
};

/// p = (4 N^3 (D+3)^{log2 N} e^{-(D - 3/2) eps} + 12 eps)^m, d + 1 = N^4 (D+3)^{log2 N}.
inline BigBudget texp_oracle(double N, double eps, double D, std::size_t m) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  const Big n(N), e(eps), d(D);
  const Big b = log(n) / log(Big(2));
  const Big grow = pow(d + 3, b);
  const Big p1 = 4 * n * n * n * grow * exp(-(d - Big(1.5)) * e) + 12 * e;
  return {pow(p1, static_cast<int>(m)), n * n * n * n * grow};
}

/// The truncated-geometric chain at r = e^{log_r}: alpha = (1 + eps) m / (m - b),
/// p = 8 alpha b ln r / r^alpha, M = floor(4b (1/p) ln(1/p)), budget
/// p(A) <= (20 r p)^m, d + 1 <= (2M + 2r)^b.
struct TgeoChain {
  Big r, p, M;
  BigBudget budget;
};

inline TgeoChain tgeo_oracle(double b_, double eps_, double log_r) {
  using boost::multiprecision::exp;
  using boost::multiprecision::floor;
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  const Big b(b_), eps(eps_);
  const int m = static_cast<int>(std::floor(b_)) + 1;
  const Big alpha = (1 + eps) * m / (m - b);
  TgeoChain c;
  c.r = exp(Big(log_r));
  c.p = 8 * alpha * b * log(c.r) / pow(c.r, alpha);
  c.M = floor(4 * b / c.p * log(1 / c.p));
  c.budget = {pow(20 * c.r * c.p, m), pow(2 * c.M + 2 * c.r, b)};
  return c;
}

/// log r_min = log max{9, (32b^2 + 40b)^{2/alpha}, e^{8 alpha b}, (8000 alpha b / eps)^{2/eps}}.
inline double tgeo_log_r_min_oracle(double b_, double eps_) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  const Big b(b_), eps(eps_);
  const int m = static_cast<int>(std::floor(b_)) + 1;
  const Big alpha = (1 + eps) * m / (m - b);
  Big best = 9;
  for (const Big& v : {pow(32 * b * b + 40 * b, 2 / alpha), exp(8 * alpha * b),
                       pow(8000 * alpha * b / eps, 2 / eps)})
    if (v > best) best = v;
  return static_cast<double>(log(best));
}

inline double relative_error(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace padlab::testing
