#include "padlab/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "padlab/net.hpp"
#include "padlab/parallel.hpp"
#include "padlab/rng.hpp"

namespace padlab {
namespace {

using Bits = std::vector<std::uint64_t>;

std::size_t popcount(const Bits& bits) {
  std::size_t total = 0;
  for (auto w : bits) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

// Coverage bitsets over `target` of every candidate ball B_r(z) that meets it.
std::vector<Bits> coverage_sets(const FiniteMetricSpace& space, std::span<const Index> target,
                                double r) {
  const std::size_t words = (target.size() + 63) / 64;
  std::vector<char> is_candidate(space.size(), 0);
  std::vector<Index> candidates;
  std::vector<Index> buffer;
  for (Index t : target) {
    space.ball_into(t, r, buffer);
    for (Index z : buffer)
      if (!is_candidate[z]) {
        is_candidate[z] = 1;
        candidates.push_back(z);
      }
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<Bits> sets;
  sets.reserve(candidates.size());
  for (Index z : candidates) {
    Bits bits(words, 0);
    for (std::size_t k = 0; k < target.size(); ++k)
      if (space.dist(z, target[k]) < r) bits[k / 64] |= std::uint64_t{1} << (k % 64);
    sets.push_back(std::move(bits));
  }
  return sets;
}

std::vector<Index> all_points_if_empty(const FiniteMetricSpace& space,
                                       std::span<const Index> centers) {
  std::vector<Index> out(centers.begin(), centers.end());
  if (out.empty()) {
    out.resize(space.size());
    std::iota(out.begin(), out.end(), Index{0});
  }
  return out;
}

class ExactCover {
 public:
  ExactCover(std::vector<Bits> sets, std::size_t universe, std::size_t budget)
      : sets_(std::move(sets)), universe_(universe), budget_(budget) {
    std::sort(sets_.begin(), sets_.end());
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
    for (const auto& s : sets_) max_cover_ = std::max(max_cover_, popcount(s));
  }

  std::optional<std::size_t> solve() {
    if (universe_ == 0) return 0;
    const std::size_t words = (universe_ + 63) / 64;
    for (std::size_t k = 1;; ++k) {
      Bits covered(words, 0);
      const auto found = search(covered, k);
      if (!found.has_value()) return std::nullopt;
      if (*found) return k;
    }
  }

 private:
  // nullopt = budget exhausted; otherwise whether a cover with <= depth sets exists.
  std::optional<bool> search(const Bits& covered, std::size_t depth) {
    if (++nodes_ > budget_) return std::nullopt;
    const std::size_t have = popcount(covered);
    if (have == universe_) return true;
    if (depth == 0) return false;
    const std::size_t missing = universe_ - have;
    if ((missing + max_cover_ - 1) / max_cover_ > depth) return false;
    std::size_t first = 0;
    while (covered[first / 64] >> (first % 64) & 1) ++first;
    const std::uint64_t mask = std::uint64_t{1} << (first % 64);
    for (const auto& s : sets_) {
      if (!(s[first / 64] & mask)) continue;
      Bits next = covered;
      for (std::size_t w = 0; w < next.size(); ++w) next[w] |= s[w];
      const auto r = search(next, depth - 1);
      if (!r.has_value() || *r) return r;
    }
    return false;
  }

  std::vector<Bits> sets_;
  std::size_t universe_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::size_t max_cover_ = 1;
};

}  // namespace

std::size_t greedy_ball_cover(const FiniteMetricSpace& space, std::span<const Index> target,
                              double r) {
  if (target.empty()) return 0;
  auto sets = coverage_sets(space, target, r);
  const std::size_t words = (target.size() + 63) / 64;
  Bits covered(words, 0);
  std::size_t have = 0, count = 0;
  while (have < target.size()) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      std::size_t gain = 0;
      for (std::size_t w = 0; w < words; ++w)
        gain += static_cast<std::size_t>(std::popcount(sets[s][w] & ~covered[w]));
      if (gain > best_gain) {
        best_gain = gain;
        best = s;
      }
    }
    if (best_gain == 0) throw ConstructionError("ball cover cannot make progress");
    for (std::size_t w = 0; w < words; ++w) covered[w] |= sets[best][w];
    have += best_gain;
    ++count;
  }
  return count;
}

std::optional<std::size_t> minimum_ball_cover(const FiniteMetricSpace& space,
                                              std::span<const Index> target, double r,
                                              std::size_t node_budget) {
  ExactCover solver(coverage_sets(space, target, r), target.size(), node_budget);
  return solver.solve();
}

DoublingEstimate doubling_constant_estimate(const FiniteMetricSpace& space,
                                            std::span<const double> radii,
                                            std::span<const Index> centers, unsigned threads) {
  require(!radii.empty(), "doubling estimate needs at least one radius");
  for (double r : radii) require(r > 0.0, "doubling radii must be positive");
  if (space.empty()) return {};
  const auto sample = all_points_if_empty(space, centers);
  std::vector<DoublingEstimate> per_center(sample.size());
  parallel_for(sample.size(), threads, [&](std::size_t k) {
    DoublingEstimate best{0, sample[k], radii.front()};
    for (double r : radii) {
      const auto target = space.ball(sample[k], 2.0 * r);
      const std::size_t size = greedy_ball_cover(space, target, r);
      if (size > best.value) best = {size, sample[k], r};
    }
    per_center[k] = best;
  });
  DoublingEstimate best = per_center.front();
  for (const auto& e : per_center)
    if (e.value > best.value) best = e;
  return best;
}

std::optional<DoublingEstimate> doubling_constant_exact(const FiniteMetricSpace& space,
                                                        std::span<const double> radii,
                                                        std::span<const Index> centers,
                                                        std::size_t node_budget) {
  require(!radii.empty(), "doubling estimate needs at least one radius");
  for (double r : radii) require(r > 0.0, "doubling radii must be positive");
  if (space.empty()) return DoublingEstimate{};
  DoublingEstimate best{0, 0, radii.front()};
  for (Index c : all_points_if_empty(space, centers)) {
    for (double r : radii) {
      const auto target = space.ball(c, 2.0 * r);
      const auto size = minimum_ball_cover(space, target, r, node_budget);
      if (!size) return std::nullopt;
      if (*size > best.value) best = {*size, c, r};
    }
  }
  return best;
}

double volume_doubling_estimate(const MeasuredSpace& ms, std::span<const double> radii,
                                std::span<const Index> centers) {
  for (double r : radii) require(r > 0.0, "volume doubling radii must be positive");
  const auto& space = ms.base();
  if (space.empty()) return 1.0;
  double best = 1.0;
  for (Index c : all_points_if_empty(space, centers)) {
    for (double r : radii) {
      const double inner = ms.ball_mass(c, r);
      if (!(inner > 0.0))
        throw ConstructionError("ball B_r(" + std::to_string(c) + ") has zero mass");
      best = std::max(best, ms.ball_mass(c, 2.0 * r) / inner);
    }
  }
  return best;
}

std::vector<std::size_t> growth_table(const FiniteMetricSpace& space, std::span<const double> radii,
                                      std::size_t trials, std::uint64_t seed, unsigned threads) {
  require(trials >= 1, "growth estimate needs at least one trial");
  for (double r : radii) require(r >= 1.0, "growth radii must be >= 1");
  std::vector<std::size_t> best(radii.size(), 0);
  if (space.empty() || radii.empty()) return best;
  const double r_max = *std::max_element(radii.begin(), radii.end());
  const std::size_t n = space.size();

  std::vector<std::vector<Index>> seen_nets;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    Rng rng(seed, trial);
    shuffle(order, rng);
    const Net net = build_net(space, 1.0, 1.0, order);
    std::vector<Index> members(net.members().begin(), net.members().end());
    if (std::find(seen_nets.begin(), seen_nets.end(), members) != seen_nets.end()) continue;

    std::vector<std::vector<std::size_t>> per_center(n);
    parallel_for(n, threads, [&](std::size_t x) {
      std::vector<std::size_t> counts(radii.size(), 0);
      for (Index t : space.ball(static_cast<Index>(x), r_max)) {
        if (!net.contains(t)) continue;
        const double d = space.dist(static_cast<Index>(x), t);
        for (std::size_t k = 0; k < radii.size(); ++k)
          if (d < radii[k]) ++counts[k];
      }
      per_center[x] = std::move(counts);
    });
    for (const auto& counts : per_center)
      for (std::size_t k = 0; k < radii.size(); ++k) best[k] = std::max(best[k], counts[k]);
    seen_nets.push_back(std::move(members));
  }
  return best;
}

std::size_t growth_function(const FiniteMetricSpace& space, double r, std::size_t trials,
                            std::uint64_t seed, unsigned threads) {
  const double radii[] = {r};
  return growth_table(space, radii, trials, seed, threads).front();
}

std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) return std::nullopt;
    lx.push_back(std::log(x[k]));
    ly.push_back(std::log(y[k]));
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace padlab
