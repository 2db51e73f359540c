#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "padlab/metric_space.hpp"
#include "padlab/net.hpp"
#include "padlab/sampler.hpp"

namespace padlab {

/// A proper coloring of a net graph G^B(X, T), indexed by net ordinal.
struct Coloring {
  std::vector<std::uint32_t> color;
  std::size_t num_colors = 0;
  /// Upper edge band B of the graph the coloring is proper for.
  double band_high = 0.0;
  /// Ordinal visiting order used by the greedy pass.
  std::vector<Index> order;
};

/// Greedy coloring: visits vertices in `order` (ordinal order when empty) and
/// gives each the least color unused by its already colored neighbors.
/// Uses at most max_degree + 1 colors.
Coloring greedy_color(const NetGraph& graph, std::span<const Index> order = {});

/// Same coloring as greedy_color(net_graph(net, band_high), order), computed
/// from ball queries without materializing the edge set. Use this when the
/// band is wide enough that the graph does not fit in memory.
Coloring greedy_color_band(const Net& net, double band_high, std::span<const Index> order = {});

bool is_proper(const Coloring& coloring, const NetGraph& graph);

/// Carving radius t(x) per net ordinal with l <= t(x) <= M.
struct RadiusAssignment {
  std::vector<double> t;
  double l = 0.0;
  double M = 0.0;

  RadiusAssignment() = default;
  RadiusAssignment(std::vector<double> radii, double l, double M);
  static RadiusAssignment constant(std::size_t count, double value, double l, double M);
  static RadiusAssignment sample(std::size_t count, const RadiusLaw& law, Rng& rng);
};

struct Cluster {
  Index center = 0;
  std::vector<Index> points;  // ascending
};

/// One ball-carving output: a partition of every space point into clusters
/// keyed by net-member centers. Cluster ids are positions in clusters(),
/// ordered by center.
class PartitionLayer {
 public:
  PartitionLayer() = default;

  /// Builds the layer from a center-per-point assignment (space indices).
  PartitionLayer(FiniteMetricSpace space, std::span<const Index> center_of_point,
                 std::shared_ptr<const RadiusAssignment> radii, std::size_t num_colors);

  const FiniteMetricSpace& space() const { return space_; }
  std::size_t point_count() const { return cluster_of_.size(); }
  Index cluster_of(Index point) const { return cluster_of_[point]; }
  Index center_of(Index point) const { return clusters_[cluster_of_[point]].center; }
  std::span<const Cluster> clusters() const { return clusters_; }

  const RadiusAssignment* radii() const { return radii_.get(); }
  std::size_t num_colors() const { return num_colors_; }

  /// Writes "point_id,cluster_id,center_id" rows with a header line.
  void write_csv(std::ostream& out) const;

 private:
  FiniteMetricSpace space_;
  std::vector<Index> cluster_of_;
  std::vector<Cluster> clusters_;
  std::shared_ptr<const RadiusAssignment> radii_;
  std::size_t num_colors_ = 0;
};

/// For each point, the net members within distance < M ordered by
/// (color, ordinal). A point is carved by the first candidate whose ball
/// reaches it; building this once lets a carving be redone cheaply for new
/// radii.
class CarvingIndex {
 public:
  CarvingIndex(const Net& net, const Coloring& coloring, double M);

  struct Candidate {
    Index ordinal;
    std::uint32_t color;
    double distance;
  };

  std::span<const Candidate> candidates(Index point) const {
    return {entries_.data() + offsets_[point], entries_.data() + offsets_[point + 1]};
  }

  /// Ordinal of the center that carves `point` under radii `t` (per ordinal).
  /// Throws ConstructionError if no ball covers the point or two centers of
  /// the same color do.
  Index assign(Index point, std::span<const double> t) const;

  std::size_t point_count() const { return offsets_.size() - 1; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Candidate> entries_;
};

/// Ball carving: each point joins the lowest-color center x with d(p, x) < t(x).
/// Requires radii.l >= net.eps() (so every point is covered) and a coloring
/// proper for G^{2M}(X, T) with M = radii.M.
PartitionLayer carve(const FiniteMetricSpace& space, const Net& net, const Coloring& coloring,
                     const RadiusAssignment& radii);

/// Carving through a prebuilt index (same result as carve()).
PartitionLayer carve(const FiniteMetricSpace& space, const Net& net, const CarvingIndex& index,
                     const RadiusAssignment& radii, std::size_t num_colors);

/// True iff the open ball B_r(center) meets at least two clusters.
bool is_cut(const PartitionLayer& layer, Index center, double r);

struct CenterCutFrequency {
  Index center = 0;
  std::size_t cuts = 0;
  std::size_t trials = 0;
  double frequency = 0.0;
  double std_error = 0.0;
};

struct CutEstimate {
  std::vector<CenterCutFrequency> per_center;
  std::size_t cuts = 0;
  std::size_t samples = 0;
  double frequency = 0.0;
  /// Binomial standard error sqrt(f(1-f)/samples) of the aggregate.
  double std_error = 0.0;
};

/// Monte Carlo estimate of P[B_probe(u) is cut] for each u in `centers`.
/// Each trial draws i.i.d. radii for every net member from `law` (stream
/// (seed, trial)), carves with the index-order greedy coloring of
/// G^{2M}(X, T), M = law upper bound, and tests every probe ball.
/// Deterministic in (seed, inputs) regardless of `threads`.
CutEstimate cut_probability_mc(const FiniteMetricSpace& space, const Net& net,
                               const RadiusLaw& law, double probe_radius,
                               std::span<const Index> centers, std::size_t trials,
                               std::uint64_t seed, unsigned threads = 1);

/// As above with a caller-supplied coloring (must be proper for G^{2M}).
CutEstimate cut_probability_mc(const FiniteMetricSpace& space, const Net& net,
                               const Coloring& coloring, const RadiusLaw& law,
                               double probe_radius, std::span<const Index> centers,
                               std::size_t trials, std::uint64_t seed, unsigned threads = 1);

}  // namespace padlab
