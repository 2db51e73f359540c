#include <algorithm>
#include <numeric>
#include <set>

#include "padlab/lll.hpp"
#include "padlab/parallel.hpp"

namespace padlab {
namespace {

constexpr std::uint64_t kColoringOrderStream = 1;

class ResamplingState {
 public:
  ResamplingState(const CspInstance& csp, const Coloring& coloring, Rng& rng)
      : csp_(csp),
        space_(csp.net.space()),
        index_(csp.net, coloring, law_upper(csp.law)),
        rng_(rng),
        radii_(csp.m, std::vector<double>(csp.net.size())),
        owner_(csp.m, std::vector<Index>(space_.size())) {
    for (auto& layer : radii_)
      for (double& t : layer) t = sample_radius(csp.law, rng_);
    for (std::size_t i = 0; i < csp.m; ++i)
      for (Index p = 0; p < space_.size(); ++p) owner_[i][p] = index_.assign(p, radii_[i]);
    probe_.resize(csp.net.size());
    for (std::size_t u = 0; u < csp.net.size(); ++u)
      probe_[u] = space_.ball(csp.net.member(u), csp.probe_radius);
  }

  bool violated(std::size_t u) const {
    const auto& ball = probe_[u];
    for (std::size_t i = 0; i < csp_.m; ++i) {
      const auto& owner = owner_[i];
      const bool cut = std::any_of(ball.begin(), ball.end(),
                                   [&](Index p) { return owner[p] != owner[ball.front()]; });
      if (!cut) return false;
    }
    return true;
  }

  // Redraws every radius in the domain of constraint u, layer by layer in
  // ordinal order, and updates everything that can depend on them.
  void resample(std::size_t u, std::set<Index>& violated_set) {
    const Index center = csp_.net.member(u);
    space_.ball_into(center, csp_.domain_radius, buffer_);
    std::vector<Index> domain;
    for (Index y : buffer_)
      if (csp_.net.contains(y)) domain.push_back(csp_.net.ordinal(y));
    for (auto& layer : radii_)
      for (Index k : domain) layer[k] = sample_radius(csp_.law, rng_);

    const double M = law_upper(csp_.law);
    space_.ball_into(center, csp_.domain_radius + M, buffer_);
    for (std::size_t i = 0; i < csp_.m; ++i)
      for (Index p : buffer_) owner_[i][p] = index_.assign(p, radii_[i]);

    space_.ball_into(center, csp_.domain_radius + M + csp_.probe_radius, buffer_);
    for (Index y : buffer_) {
      if (!csp_.net.contains(y)) continue;
      const Index v = csp_.net.ordinal(y);
      if (violated(v))
        violated_set.insert(v);
      else
        violated_set.erase(v);
    }
  }

  std::vector<RadiusAssignment> assignments() const {
    std::vector<RadiusAssignment> out;
    for (const auto& layer : radii_)
      out.emplace_back(layer, law_lower(csp_.law), law_upper(csp_.law));
    return out;
  }

 private:
  const CspInstance& csp_;
  const FiniteMetricSpace& space_;
  CarvingIndex index_;
  Rng& rng_;
  std::vector<std::vector<double>> radii_;
  std::vector<std::vector<Index>> owner_;  // carving center ordinal per layer and point
  std::vector<std::vector<Index>> probe_;
  std::vector<Index> buffer_;
};

}  // namespace

MoserTardosResult moser_tardos(const CspInstance& csp, std::uint64_t seed,
                               std::size_t max_rounds, unsigned threads) {
  require(csp.m >= 1, "CSP needs at least one layer");
  require(csp.probe_radius > 0.0, "probe radius must be positive");
  require(csp.domain_radius > 0.0, "domain radius must be positive");
  require(law_lower(csp.law) >= csp.net.eps(), "law lower bound must be >= net eps");
  const std::size_t constraints = csp.net.size();

  MoserTardosResult result;
  result.max_rounds = max_rounds != 0 ? max_rounds : 100 * constraints;
  // Greedy coloring visits members in a seeded random order.
  std::vector<Index> order(constraints);
  std::iota(order.begin(), order.end(), Index{0});
  Rng order_rng(seed, kColoringOrderStream);
  shuffle(order, order_rng);
  result.coloring = greedy_color_band(csp.net, 2.0 * law_upper(csp.law), order);

  Rng rng(seed);
  ResamplingState state(csp, result.coloring, rng);

  std::vector<char> initially(constraints, 0);
  parallel_for(constraints, threads, [&](std::size_t u) { initially[u] = state.violated(u); });
  std::set<Index> violated;
  for (std::size_t u = 0; u < constraints; ++u)
    if (initially[u]) violated.insert(static_cast<Index>(u));
  result.initial_violations = violated.size();

  while (!violated.empty() && result.rounds < result.max_rounds) {
    const auto pick = static_cast<std::ptrdiff_t>(rng.below(violated.size()));
    const Index u = *std::next(violated.begin(), pick);
    state.resample(u, violated);
    ++result.rounds;
    result.resampled.push_back(csp.net.member(u));
    result.violated_per_round.push_back(violated.size());
  }

  result.success = violated.empty();
  result.residual.assign(violated.begin(), violated.end());
  for (Index& u : result.residual) u = csp.net.member(u);
  result.radii = state.assignments();
  return result;
}

std::vector<PartitionLayer> carve_layers(const CspInstance& csp, const MoserTardosResult& run) {
  const CarvingIndex index(csp.net, run.coloring, law_upper(csp.law));
  std::vector<PartitionLayer> layers;
  for (const auto& radii : run.radii)
    layers.push_back(carve(csp.net.space(), csp.net, index, radii, run.coloring.num_colors));
  return layers;
}

Certificate certify_decomposition(const CspInstance& csp, std::uint64_t seed,
                                  std::size_t max_rounds, unsigned threads) {
  Certificate cert;
  cert.run = moser_tardos(csp, seed, max_rounds, threads);
  cert.decomposition.net = csp.net;
  cert.decomposition.R = csp.probe_radius;
  cert.decomposition.D = 2.0 * law_upper(csp.law);
  for (const auto& layer : carve_layers(csp, cert.run))
    cert.decomposition.layers.push_back(to_set_family(layer));
  cert.report = verify_padded(cert.decomposition, VerifyOptions{false, threads});
  cert.passed = cert.run.success && cert.report.passed;
  return cert;
}

}  // namespace padlab
