#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "padlab/metric_space.hpp"

namespace padlab {

/// Empirical doubling data. `value` is the largest cover size observed, which
/// is a lower estimate of the doubling constant N because only the sampled
/// (center, radius) pairs are examined.
struct DoublingEstimate {
  std::size_t value = 0;
  Index center = 0;
  double radius = 0.0;
};

/// For every (center, r), covers B_2r(center) greedily by balls B_r(z) with z a
/// space point, and reports the maximum cover size. Empty `centers` means all
/// points. Radii must be nonempty and positive.
DoublingEstimate doubling_constant_estimate(const FiniteMetricSpace& space,
                                            std::span<const double> radii,
                                            std::span<const Index> centers = {},
                                            unsigned threads = 1);

/// Same quantity with a minimum (optimal) cover per ball, found by
/// branch-and-bound. Returns nullopt if any single ball exceeds `node_budget`
/// search nodes. Intended for n <= 300.
std::optional<DoublingEstimate> doubling_constant_exact(const FiniteMetricSpace& space,
                                                        std::span<const double> radii,
                                                        std::span<const Index> centers = {},
                                                        std::size_t node_budget = 2'000'000);

/// Minimum number of balls B_r(z), z in the space, covering `target`
/// (a sorted point set). Returns nullopt when the search exceeds `node_budget`.
std::optional<std::size_t> minimum_ball_cover(const FiniteMetricSpace& space,
                                              std::span<const Index> target, double r,
                                              std::size_t node_budget = 2'000'000);

/// Greedy cover size of `target` by balls B_r(z).
std::size_t greedy_ball_cover(const FiniteMetricSpace& space, std::span<const Index> target,
                              double r);

/// max over samples of mu(B_2r(x)) / mu(B_r(x)): a lower estimate of C_D.
double volume_doubling_estimate(const MeasuredSpace& ms, std::span<const double> radii,
                                std::span<const Index> centers = {});

/// Lower estimate of the metric growth gamma(r): builds `trials` (1,1)-nets
/// from random sweep orders and returns the largest |B_r(x) ∩ T| over all of
/// them and all centers x. Requires r >= 1 and trials >= 1.
std::size_t growth_function(const FiniteMetricSpace& space, double r, std::size_t trials,
                            std::uint64_t seed, unsigned threads = 1);

/// growth_function for several radii sharing the same nets.
std::vector<std::size_t> growth_table(const FiniteMetricSpace& space, std::span<const double> radii,
                                      std::size_t trials, std::uint64_t seed,
                                      unsigned threads = 1);

/// Least-squares slope of log(y) against log(x). nullopt when fewer than two
/// distinct x values are given or any value is nonpositive.
std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace padlab
