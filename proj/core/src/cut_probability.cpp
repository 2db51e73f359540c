#include <algorithm>
#include <cmath>

#include "padlab/carving.hpp"
#include "padlab/parallel.hpp"

namespace padlab {
namespace {

// Everything about one probe center that does not depend on the radii.
struct Probe {
  Index center = 0;
  std::vector<Index> ball;  // B_probe(center)
  // Net members within M + probe of the center in (color, ordinal) order:
  // only these can carve a point of the probe ball.
  std::vector<Index> ordinals;
  std::vector<double> reach;  // dist(center, member) per entry of `ordinals`
};

// Carves only the probe ball and reports whether it meets two clusters.
// Scratch vectors are owned by the caller to avoid reallocations per trial.
bool probe_is_cut(const FiniteMetricSpace& space, const Net& net, const Probe& probe,
                  std::span<const double> t, double probe_radius,
                  std::vector<char>& assigned) {
  assigned.assign(probe.ball.size(), 0);
  std::size_t remaining = probe.ball.size();
  Index first_center = kNoIndex;
  for (std::size_t k = 0; k < probe.ordinals.size() && remaining > 0; ++k) {
    const Index ord = probe.ordinals[k];
    const double radius = t[ord];
    if (probe.reach[k] >= radius + probe_radius) continue;
    const Index x = net.member(ord);
    for (std::size_t i = 0; i < probe.ball.size(); ++i) {
      if (assigned[i] || !(space.dist(probe.ball[i], x) < radius)) continue;
      assigned[i] = 1;
      --remaining;
      if (first_center == kNoIndex) first_center = x;
      if (x != first_center) return true;
    }
  }
  if (remaining > 0)
    throw ConstructionError("a point near " + std::to_string(probe.center) +
                            " is covered by no carving ball");
  return false;
}

}  // namespace

CutEstimate cut_probability_mc(const FiniteMetricSpace& space, const Net& net,
                               const Coloring& coloring, const RadiusLaw& law,
                               double probe_radius, std::span<const Index> centers,
                               std::size_t trials, std::uint64_t seed, unsigned threads) {
  require(trials >= 1, "cut_probability_mc requires trials >= 1");
  require(probe_radius > 0.0, "probe radius must be positive");
  require(coloring.color.size() == net.size(), "coloring does not match the net");
  const double M = law_upper(law);
  require(law_lower(law) >= net.eps(), "law lower bound must be >= net eps");
  require(coloring.band_high >= 2.0 * M, "coloring must be proper for G^{2M}");

  std::vector<Probe> probes(centers.size());
  {
    std::vector<Index> near;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      Probe& pr = probes[c];
      pr.center = centers[c];
      pr.ball = space.ball(pr.center, probe_radius);
      space.ball_into(pr.center, M + probe_radius, near);
      std::vector<Index> ords;
      for (Index y : near)
        if (net.contains(y)) ords.push_back(net.ordinal(y));
      std::sort(ords.begin(), ords.end(), [&](Index a, Index b) {
        return coloring.color[a] != coloring.color[b] ? coloring.color[a] < coloring.color[b]
                                                      : a < b;
      });
      pr.ordinals = ords;
      pr.reach.reserve(ords.size());
      for (Index o : ords) pr.reach.push_back(space.dist(pr.center, net.member(o)));
    }
  }

  // cut[trial * centers + c]
  std::vector<char> cut(trials * probes.size(), 0);
  parallel_for(trials, threads, [&](std::size_t trial) {
    Rng rng(seed, trial);
    std::vector<double> t(net.size());
    for (double& r : t) r = sample_radius(law, rng);
    std::vector<char> assigned;
    for (std::size_t c = 0; c < probes.size(); ++c)
      cut[trial * probes.size() + c] =
          probe_is_cut(space, net, probes[c], t, probe_radius, assigned) ? 1 : 0;
  });

  CutEstimate out;
  out.per_center.resize(probes.size());
  for (std::size_t c = 0; c < probes.size(); ++c) {
    auto& pc = out.per_center[c];
    pc.center = probes[c].center;
    pc.trials = trials;
    for (std::size_t trial = 0; trial < trials; ++trial) pc.cuts += cut[trial * probes.size() + c];
    pc.frequency = static_cast<double>(pc.cuts) / static_cast<double>(trials);
    pc.std_error = std::sqrt(pc.frequency * (1.0 - pc.frequency) / static_cast<double>(trials));
    out.cuts += pc.cuts;
  }
  out.samples = trials * probes.size();
  if (out.samples > 0) {
    out.frequency = static_cast<double>(out.cuts) / static_cast<double>(out.samples);
    out.std_error =
        std::sqrt(out.frequency * (1.0 - out.frequency) / static_cast<double>(out.samples));
  }
  return out;
}

CutEstimate cut_probability_mc(const FiniteMetricSpace& space, const Net& net,
                               const RadiusLaw& law, double probe_radius,
                               std::span<const Index> centers, std::size_t trials,
                               std::uint64_t seed, unsigned threads) {
  const Coloring coloring = greedy_color_band(net, 2.0 * law_upper(law));
  return cut_probability_mc(space, net, coloring, law, probe_radius, centers, trials, seed,
                            threads);
}

}  // namespace padlab
