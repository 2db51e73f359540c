#include "padlab/decomposition.hpp"

#include <algorithm>
#include <set>

#include "padlab/parallel.hpp"
#include "padlab/rng.hpp"

namespace padlab {
namespace {

void guard_size(const FiniteMetricSpace& space) {
  require(space.size() <= kMaxVerifyPoints,
          "exhaustive verification is limited to " + std::to_string(kMaxVerifyPoints) +
              " points; got " + std::to_string(space.size()));
}

void check_family(const SetFamily& family, std::size_t n) {
  for (const auto& set : family) {
    require(std::is_sorted(set.begin(), set.end()) &&
                std::adjacent_find(set.begin(), set.end()) == set.end(),
            "point sets must be sorted without duplicates");
    require(set.empty() || set.back() < n, "point set refers to a point outside the space");
  }
}

// sets_of[p] = indices of the sets in `family` containing p.
std::vector<std::vector<std::size_t>> membership(const SetFamily& family, std::size_t n) {
  std::vector<std::vector<std::size_t>> sets_of(n);
  for (std::size_t k = 0; k < family.size(); ++k)
    for (Index p : family[k]) sets_of[p].push_back(k);
  return sets_of;
}

// First pair (in lexicographic order) of points of `set` farther apart than D.
std::optional<std::pair<Index, Index>> diameter_violation(const FiniteMetricSpace& space,
                                                          const PointSet& set, double D) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (space.dist(set[i], set[j]) > D) return std::pair{set[i], set[j]};
  return std::nullopt;
}

void check_diameters(const FiniteMetricSpace& space, std::span<const SetFamily> layers, double D,
                     std::vector<Witness>& out) {
  for (std::size_t i = 0; i < layers.size(); ++i)
    for (std::size_t k = 0; k < layers[i].size(); ++k)
      if (auto pair = diameter_violation(space, layers[i][k], D))
        out.push_back({"diameter", i, pair->first, {k}, {pair->first, pair->second}});
}

VerificationReport finish(std::vector<std::string> conditions, std::vector<Witness> witnesses) {
  std::sort(witnesses.begin(), witnesses.end());
  VerificationReport report;
  report.passed = witnesses.empty();
  for (auto& c : conditions) {
    const bool failed = std::any_of(witnesses.begin(), witnesses.end(),
                                    [&](const Witness& w) { return w.condition == c; });
    report.conditions.push_back({std::move(c), !failed});
  }
  report.witnesses = std::move(witnesses);
  return report;
}

std::string first_failure(const VerificationReport& report) {
  if (report.witnesses.empty()) return "unknown";
  const auto& w = report.witnesses.front();
  return w.condition + " at point " + std::to_string(w.subject);
}

}  // namespace

VerificationReport verify_padded(std::span<const SetFamily> layers, const Net& net, double R,
                                 double D, const VerifyOptions& options) {
  require(!layers.empty(), "verify_padded requires at least one layer");
  require(R > 0.0, "padding radius must be positive");
  const auto& space = net.space();
  guard_size(space);
  const std::size_t n = space.size();
  for (const auto& family : layers) check_family(family, n);

  std::vector<std::vector<std::vector<std::size_t>>> sets_of;
  sets_of.reserve(layers.size());
  for (const auto& family : layers) sets_of.push_back(membership(family, n));

  std::vector<Witness> witnesses;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    for (Index x : net.members()) {
      const auto& owners = sets_of[i][x];
      if (owners.size() != 1) witnesses.push_back({"partition", i, x, owners, {x}});
    }
    if (options.strict)
      for (Index p = 0; p < n; ++p)
        if (sets_of[i][p].size() > 1)
          witnesses.push_back({"strict_disjoint", i, p, sets_of[i][p], {p}});
  }
  check_diameters(space, layers, D, witnesses);

  std::vector<std::optional<Witness>> padding(net.size());
  parallel_for(net.size(), options.threads, [&](std::size_t ord) {
    const Index x = net.member(ord);
    const auto ball = space.ball(x, R);
    for (std::size_t i = 0; i < layers.size(); ++i)
      for (std::size_t k : sets_of[i][x]) {
        const auto& set = layers[i][k];
        if (std::includes(set.begin(), set.end(), ball.begin(), ball.end())) return;
      }
    padding[ord] = Witness{"padding", std::nullopt, x, {}, ball};
  });
  for (auto& w : padding)
    if (w) witnesses.push_back(std::move(*w));

  std::vector<std::string> conditions{"partition", "diameter", "padding"};
  if (options.strict) conditions.emplace_back("strict_disjoint");
  return finish(std::move(conditions), std::move(witnesses));
}

VerificationReport verify_padded(const PaddedDecomposition& pd, const VerifyOptions& options) {
  return verify_padded(pd.layers, pd.net, pd.R, pd.D, options);
}

VerificationReport verify_cover(const Cover& cover) {
  require(cover.r_disjoint >= 0.0, "r_disjoint must be nonnegative");
  const auto& space = cover.space;
  guard_size(space);
  const std::size_t n = space.size();
  for (const auto& family : cover.layers) check_family(family, n);

  std::vector<Witness> witnesses;
  std::vector<char> covered(n, 0);
  std::vector<Index> ball;
  for (std::size_t i = 0; i < cover.layers.size(); ++i) {
    const auto sets_of = membership(cover.layers[i], n);
    std::set<std::pair<std::size_t, std::size_t>> reported;
    for (Index p = 0; p < n; ++p) {
      if (sets_of[p].empty()) continue;
      covered[p] = 1;
      space.closed_ball_into(p, cover.r_disjoint, ball);
      for (std::size_t s : sets_of[p])
        for (Index q : ball)
          for (std::size_t t : sets_of[q]) {
            if (t == s || !reported.emplace(std::min(s, t), std::max(s, t)).second) continue;
            witnesses.push_back({"disjoint", i, p, {std::min(s, t), std::max(s, t)}, {p, q}});
          }
    }
  }
  check_diameters(space, cover.layers, cover.D_bound, witnesses);
  for (Index p = 0; p < n; ++p)
    if (!covered[p]) witnesses.push_back({"coverage", std::nullopt, p, {}, {p}});
  return finish({"disjoint", "diameter", "coverage"}, std::move(witnesses));
}

SetFamily to_set_family(const PartitionLayer& layer) {
  SetFamily family;
  family.reserve(layer.clusters().size());
  for (const auto& c : layer.clusters()) family.push_back(c.points);
  return family;
}

PaddedDecomposition padded_from_cover(const Cover& cover, const Net& net, double R) {
  require(R > 0.0, "padding radius must be positive");
  require(net.delta() == net.eps(), "padded_from_cover requires an (r, r)-net");
  require(cover.space.size() == net.space().size(), "cover and net live on different spaces");
  const double r = net.eps();
  require(cover.r_disjoint >= 2.0 * R + r,
          "cover disjointness " + std::to_string(cover.r_disjoint) + " is below 2R + r = " +
              std::to_string(2.0 * R + r));
  const auto report = verify_cover(cover);
  if (!report.passed)
    throw PreconditionError("input cover does not verify: " + first_failure(report));

  const auto& space = net.space();
  const std::size_t n = space.size();
  PaddedDecomposition pd;
  pd.net = net;
  pd.R = R;
  pd.D = 2.0 * R + 2.0 * r + cover.D_bound;
  std::vector<char> mark(n);
  std::vector<Index> ball;
  for (const auto& family : cover.layers) {
    SetFamily layer;
    std::vector<char> reached(n, 0);
    for (const auto& A : family) {
      std::fill(mark.begin(), mark.end(), 0);
      for (Index a : A) {
        space.ball_into(a, R, ball);
        for (Index y : ball) mark[y] = 1;
      }
      PointSet grown;
      for (Index y = 0; y < n; ++y)
        if (mark[y]) {
          grown.push_back(y);
          reached[y] = 1;
        }
      layer.push_back(std::move(grown));
    }
    for (Index x : net.members())
      if (!reached[x]) layer.push_back(space.ball(x, r));
    pd.layers.push_back(std::move(layer));
  }
  return pd;
}

Cover cover_from_padded(const PaddedDecomposition& pd, double R) {
  require(R > 0.0, "cover radius must be positive");
  const double r = pd.net.eps();
  require(pd.R >= R + 2.0 * r, "decomposition padding " + std::to_string(pd.R) +
                                   " is below R + 2r = " + std::to_string(R + 2.0 * r));
  const auto report = verify_padded(pd);
  if (!report.passed)
    throw PreconditionError("input decomposition does not verify: " + first_failure(report));

  const auto& space = pd.net.space();
  const std::size_t n = space.size();
  Cover cover;
  cover.space = space;
  cover.r_disjoint = R;
  cover.D_bound = pd.D;
  std::vector<char> inside(n);
  std::vector<Index> ball;
  for (const auto& family : pd.layers) {
    SetFamily layer;
    for (const auto& A : family) {
      std::fill(inside.begin(), inside.end(), 0);
      for (Index a : A) inside[a] = 1;
      PointSet shrunk;
      for (Index x : A) {
        space.ball_into(x, R + r, ball);
        if (std::all_of(ball.begin(), ball.end(), [&](Index y) { return inside[y] != 0; }))
          shrunk.push_back(x);
      }
      if (!shrunk.empty()) layer.push_back(std::move(shrunk));
    }
    cover.layers.push_back(std::move(layer));
  }
  return cover;
}

Cover greedy_cover(const FiniteMetricSpace& space, double rho, double a, std::uint64_t seed) {
  require(rho >= 0.0, "cover disjointness must be nonnegative");
  require(a > 0.0, "cover set radius must be positive");
  const std::size_t n = space.size();
  Cover cover;
  cover.space = space;
  cover.r_disjoint = rho;
  cover.D_bound = 2.0 * a;
  Rng rng(seed);
  std::vector<Index> order(n);
  for (Index p = 0; p < n; ++p) order[p] = p;
  std::vector<char> covered(n, 0);
  std::size_t remaining = n;
  std::vector<Index> ball;
  while (remaining > 0) {
    shuffle(order, rng);
    std::vector<char> blocked(n, 0);
    SetFamily layer;
    for (Index p : order) {
      if (covered[p] || blocked[p]) continue;
      space.ball_into(p, a, ball);
      PointSet set;
      for (Index q : ball)
        if (!blocked[q]) set.push_back(q);
      for (Index q : set) {
        if (!covered[q]) {
          covered[q] = 1;
          --remaining;
        }
      }
      for (Index q : set) {
        space.closed_ball_into(q, rho, ball);
        for (Index y : ball) blocked[y] = 1;
      }
      layer.push_back(std::move(set));
    }
    cover.layers.push_back(std::move(layer));
  }
  return cover;
}

}  // namespace padlab
