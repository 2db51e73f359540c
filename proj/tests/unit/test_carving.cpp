#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include <padlab/carving.hpp>
#include <padlab/fixtures.hpp>
#include <padlab/net.hpp>

#include "test_support.hpp"

using namespace padlab;
using padlab::testing::iota_indices;

namespace {

using Partition = std::set<std::vector<Index>>;

Partition partition_of(const PartitionLayer& layer) {
  Partition out;
  for (const auto& c : layer.clusters()) out.insert(c.points);
  return out;
}

// Literal inductive carving: color classes in increasing order, each center of
// the class takes the not yet assigned points of its ball.
std::vector<Index> literal_carving(const FiniteMetricSpace& space, const Net& net,
                                   const Coloring& coloring, std::span<const double> t) {
  std::vector<Index> center(space.size(), kNoIndex);
  for (std::uint32_t c = 0; c < coloring.num_colors; ++c) {
    for (std::size_t o = 0; o < net.size(); ++o) {
      if (coloring.color[o] != c) continue;
      for (Index p = 0; p < space.size(); ++p)
        if (center[p] == kNoIndex && space.dist(p, net.member(o)) < t[o]) {
          center[p] = net.member(o);
        }
    }
  }
  return center;
}

bool literal_is_cut(const FiniteMetricSpace& space, std::span<const Index> center, Index u,
                    double r) {
  std::set<Index> seen;
  for (Index p = 0; p < space.size(); ++p)
    if (space.dist(u, p) < r) seen.insert(center[p]);
  return seen.size() > 1;
}

struct Instance {
  FiniteMetricSpace space;
  Net net;
  Coloring coloring;
  RadiusLaw law = TexpParams(1, 1, 2);
};

Instance random_instance(Rng& rng, std::size_t n) {
  Instance in;
  in.space = padlab::testing::random_space(rng, n);
  const double eps = 2.0 + static_cast<double>(rng.below(4));
  auto order = iota_indices(n);
  shuffle(order, rng);
  in.net = build_net(in.space, eps, eps, order);
  const double M = eps + 2.0 + static_cast<double>(rng.below(12));
  in.law = TexpParams(0.05 + 0.5 * rng.uniform(), eps, M);
  auto color_order = iota_indices(in.net.size());
  shuffle(color_order, rng);
  in.coloring = greedy_color_band(in.net, 2.0 * M, color_order);
  return in;
}

}  // namespace

TEST(GreedyColor, PathAndClique) {
  const auto space = integer_segment(12);
  const Net path_net(space, {0, 3, 6, 9, 12}, 3, 3);
  const auto path = net_graph(path_net, 4);
  const auto pc = greedy_color(path);
  EXPECT_EQ(pc.num_colors, 2u);
  EXPECT_TRUE(is_proper(pc, path));

  const Net clique_net(space, {0, 3, 6, 9}, 3, 3);
  const auto k4 = net_graph(clique_net, 10);
  const std::vector<Index> order{2, 0, 3, 1};
  for (const auto& c : {greedy_color(k4), greedy_color(k4, order)}) {
    EXPECT_EQ(c.num_colors, 4u);
    EXPECT_TRUE(is_proper(c, k4));
  }
  EXPECT_THROW(greedy_color(k4, std::vector<Index>{0, 0, 1, 2}), PreconditionError);
}

TEST(GreedyColor, RandomGraphsAreProperWithinDegreeBound) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto space = padlab::testing::random_space(rng, 60 + rng.below(60));
    const double eps = 1.0 + static_cast<double>(rng.below(6));
    const Net net = build_net(space, eps, eps);
    const double M = eps + 0.5 + 20.0 * rng.uniform();
    const auto graph = net_graph(net, M);
    // Adjacency oracle.
    for (std::size_t a = 0; a < net.size(); ++a) {
      std::vector<Index> expected;
      for (std::size_t b = 0; b < net.size(); ++b) {
        const double d = space.dist(net.member(a), net.member(b));
        if (a != b && d >= eps && d <= M) expected.push_back(static_cast<Index>(b));
      }
      ASSERT_EQ(std::vector<Index>(graph.neighbors(a).begin(), graph.neighbors(a).end()), expected);
    }
    auto order = iota_indices(net.size());
    shuffle(order, rng);
    const auto coloring = greedy_color(graph, order);
    ASSERT_TRUE(is_proper(coloring, graph)) << "trial " << trial;
    ASSERT_LE(coloring.num_colors, graph.max_degree() + 1);
    const auto band = greedy_color_band(net, M, order);
    ASSERT_EQ(band.color, coloring.color) << "trial " << trial;
    ASSERT_EQ(band.num_colors, coloring.num_colors);
  }
}

class HandCarving : public ::testing::Test {
 protected:
  FiniteMetricSpace space = integer_segment(9);
  Net net{space, {0, 3, 6, 9}, 3, 3};
  Coloring coloring{{0, 1, 2, 3}, 4, 10, {0, 1, 2, 3}};
  PartitionLayer layer = carve(space, net, coloring, RadiusAssignment::constant(4, 4, 3, 5));
};

TEST_F(HandCarving, Clusters) {
  ASSERT_EQ(layer.clusters().size(), 3u);
  EXPECT_EQ(layer.clusters()[0].points, (std::vector<Index>{0, 1, 2, 3}));
  EXPECT_EQ(layer.clusters()[1].points, (std::vector<Index>{4, 5, 6}));
  EXPECT_EQ(layer.clusters()[2].points, (std::vector<Index>{7, 8, 9}));
  EXPECT_EQ(layer.center_of(5), 3u);
  EXPECT_EQ(layer.center_of(8), 6u);
}

TEST_F(HandCarving, CutBalls) {
  EXPECT_TRUE(is_cut(layer, 6, 2));
  EXPECT_FALSE(is_cut(layer, 1, 2));
  EXPECT_FALSE(is_cut(layer, 3, 1));
}

TEST_F(HandCarving, Csv) {
  std::ostringstream out;
  layer.write_csv(out);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "point_id,cluster_id,center_id");
  EXPECT_NE(text.find("\n5,1,3\n"), std::string::npos);
}

TEST(Carve, DegenerateCases) {
  const auto space = integer_segment(20);
  const Net one(space, {10}, 11, 11);
  const Coloring single{{0}, 1, 40, {0}};
  const auto whole = carve(space, one, single, RadiusAssignment::constant(1, 20, 11, 20));
  ASSERT_EQ(whole.clusters().size(), 1u);
  EXPECT_EQ(whole.clusters()[0].points.size(), 21u);

  const auto spread = padlab::testing::line({0, 10, 20});
  const Net all(spread, {0, 1, 2}, 1, 1);
  const Coloring mono{{0, 0, 0}, 1, 4, {0, 1, 2}};
  const auto isolated = carve(spread, all, mono, RadiusAssignment::constant(3, 1, 1, 2));
  EXPECT_EQ(isolated.clusters().size(), 3u);
}

TEST(Carve, RejectsBadInputs) {
  const auto space = integer_segment(9);
  const Net net(space, {0, 3, 6, 9}, 3, 3);
  const Coloring coloring{{0, 1, 2, 3}, 4, 10, {0, 1, 2, 3}};
  EXPECT_THROW(carve(space, net, coloring, RadiusAssignment::constant(4, 2.5, 2, 5)),
               PreconditionError);
  EXPECT_THROW(carve(space, net, coloring, RadiusAssignment::constant(4, 4, 3, 6)),
               PreconditionError);
  const Coloring improper{{0, 0, 0, 0}, 1, 10, {0, 1, 2, 3}};
  EXPECT_THROW(carve(space, net, improper, RadiusAssignment::constant(4, 4, 3, 5)),
               ConstructionError);
}

TEST(Carve, MatchesLiteralScheme) {
  Rng rng(31);
  for (int fixture = 0; fixture < 8; ++fixture) {
    const auto in = random_instance(rng, 150 + rng.below(350));
    const CarvingIndex index(in.net, in.coloring, law_upper(in.law));
    for (int draw = 0; draw < 50; ++draw) {
      const auto radii = RadiusAssignment::sample(in.net.size(), in.law, rng);
      const auto layer = carve(in.space, in.net, index, radii, in.coloring.num_colors);
      const auto oracle = literal_carving(in.space, in.net, in.coloring, radii.t);
      for (Index p = 0; p < in.space.size(); ++p)
        ASSERT_EQ(layer.center_of(p), oracle[p]) << "fixture " << fixture << " draw " << draw;
    }
  }
}

TEST(Carve, LayersArePartitionsWithBoundedDiameter) {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto in = random_instance(rng, 200);
    const auto radii = RadiusAssignment::sample(in.net.size(), in.law, rng);
    const auto layer = carve(in.space, in.net, in.coloring, radii);
    std::vector<int> hits(in.space.size(), 0);
    for (const auto& c : layer.clusters()) {
      ASSERT_FALSE(c.points.empty());
      for (Index p : c.points) {
        ++hits[p];
        ASSERT_LT(in.space.dist(p, c.center), radii.t[in.net.ordinal(c.center)]);
        for (Index q : c.points) ASSERT_LE(in.space.dist(p, q), 2.0 * radii.M);
      }
    }
    for (int h : hits) ASSERT_EQ(h, 1);
  }
}

TEST(Carve, IsCutIsMonotoneInRadius) {
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const auto in = random_instance(rng, 200);
    const auto layer =
        carve(in.space, in.net, in.coloring, RadiusAssignment::sample(in.net.size(), in.law, rng));
    for (Index u = 0; u < in.space.size(); u += 7) {
      bool was_cut = false;
      for (double r = 0.5; r < 30; r += 0.5) {
        const bool cut = is_cut(layer, u, r);
        ASSERT_TRUE(!was_cut || cut) << "u=" << u << " r=" << r;
        was_cut = cut;
      }
    }
  }
}

// Relabeling the points (and carrying net, colors and radii along) yields the
// same partition up to the relabeling.
TEST(Carve, InvariantUnderRelabeling) {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto in = random_instance(rng, 120);
    const std::size_t n = in.space.size();
    auto perm = iota_indices(n);  // old -> new
    shuffle(perm, rng);
    std::vector<double> matrix(n * n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) matrix[perm[i] * n + perm[j]] = in.space.dist(i, j);
    const auto relabeled = padlab::testing::matrix_space(n, std::move(matrix));

    std::vector<Index> members;
    for (Index x : in.net.members()) members.push_back(perm[x]);
    std::sort(members.begin(), members.end());
    const Net net2(relabeled, members, in.net.eps(), in.net.delta());
    const auto radii = RadiusAssignment::sample(in.net.size(), in.law, rng);
    std::vector<double> t2(in.net.size());
    Coloring c2 = in.coloring;
    for (std::size_t o = 0; o < in.net.size(); ++o) {
      const Index o2 = net2.ordinal(perm[in.net.member(o)]);
      t2[o2] = radii.t[o];
      c2.color[o2] = in.coloring.color[o];
    }
    const auto a = carve(in.space, in.net, in.coloring, radii);
    const auto b = carve(relabeled, net2, c2, RadiusAssignment(t2, radii.l, radii.M));
    Partition mapped;
    for (const auto& cluster : partition_of(a)) {
      std::vector<Index> s;
      for (Index p : cluster) s.push_back(perm[p]);
      std::sort(s.begin(), s.end());
      mapped.insert(s);
    }
    EXPECT_EQ(mapped, partition_of(b));
  }
}

TEST(CutProbability, TrivialSingleCluster) {
  const auto space = integer_segment(30);
  const Net one(space, {15}, 16, 16);
  const TexpParams law(50, 16, 40);
  const std::vector<Index> centers = iota_indices(space.size());
  const auto est = cut_probability_mc(space, one, law, 3, centers, 1, 5);
  EXPECT_EQ(est.cuts, 0u);
  EXPECT_EQ(est.frequency, 0.0);
}

TEST(CutProbability, MatchesLiteralScheme) {
  Rng rng(71);
  for (int fixture = 0; fixture < 3; ++fixture) {
    const auto in = random_instance(rng, 100);
    const std::vector<Index> centers = iota_indices(in.space.size());
    const double probe = 1.0 + static_cast<double>(fixture);
    const std::uint64_t seed = 1000 + fixture;
    const auto est =
        cut_probability_mc(in.space, in.net, in.coloring, in.law, probe, centers, 50, seed);
    std::vector<std::size_t> cuts(centers.size(), 0);
    for (std::size_t trial = 0; trial < 50; ++trial) {
      Rng draw(seed, trial);
      std::vector<double> t(in.net.size());
      for (double& r : t) r = sample_radius(in.law, draw);
      const auto center = literal_carving(in.space, in.net, in.coloring, t);
      for (Index u : centers) cuts[u] += literal_is_cut(in.space, center, u, probe) ? 1 : 0;
    }
    for (std::size_t c = 0; c < centers.size(); ++c)
      ASSERT_EQ(est.per_center[c].cuts, cuts[c]) << "fixture " << fixture << " center " << c;
  }
}

TEST(CutProbability, IndependentOfThreadCount) {
  const auto space = integer_segment(3000);
  const Net net = build_net(space, 1, 1);
  const TgeoParams law(0.01, 300);
  std::vector<Index> centers;
  for (Index u = 0; u < space.size(); u += 97) centers.push_back(u);
  const auto one = cut_probability_mc(space, net, law, 5, centers, 40, 9, 1);
  const auto many = cut_probability_mc(space, net, law, 5, centers, 40, 9, 4);
  EXPECT_EQ(one.cuts, many.cuts);
  for (std::size_t c = 0; c < centers.size(); ++c)
    EXPECT_EQ(one.per_center[c].cuts, many.per_center[c].cuts);
}
