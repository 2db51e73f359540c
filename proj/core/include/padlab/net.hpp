#pragma once

#include <optional>
#include <span>
#include <vector>

#include "padlab/metric_space.hpp"

namespace padlab {

/// An (eps, delta)-net: every point lies at distance < eps from a member and
/// distinct members are at distance >= delta.
///
/// Members are stored in ascending point order; a member's position in that
/// order is its "ordinal", which other modules use to index per-member data.
class Net {
 public:
  Net() = default;

  /// Wraps an explicit member set. Does not validate; see is_valid_net().
  Net(FiniteMetricSpace space, std::vector<Index> members, double eps, double delta);

  const FiniteMetricSpace& space() const { return space_; }
  std::span<const Index> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  Index member(std::size_t ordinal) const { return members_[ordinal]; }
  double eps() const { return eps_; }
  double delta() const { return delta_; }

  bool contains(Index point) const { return ordinal_of_[point] != kNoIndex; }
  /// Ordinal of a member, or kNoIndex for non-members.
  Index ordinal(Index point) const { return ordinal_of_[point]; }

 private:
  FiniteMetricSpace space_;
  std::vector<Index> members_;
  std::vector<Index> ordinal_of_;
  double eps_ = 0.0;
  double delta_ = 0.0;
};

/// Greedy sweep: visits points in `order` (index order when empty) and admits
/// a point iff it is at distance >= delta from every admitted point.
/// Requires 0 < delta <= eps. When delta < eps the covering property is
/// checked afterwards and a ConstructionError is thrown if it fails.
Net build_net(const FiniteMetricSpace& space, double eps, double delta,
              std::span<const Index> order = {});

/// Checks both net invariants exhaustively.
bool is_valid_net(const Net& net);

/// The net graph G^M(X, T): vertices are net ordinals, (x, y) is an edge iff
/// delta <= d(x, y) <= M and x != y.
class NetGraph {
 public:
  NetGraph(const Net& net, double band_high);

  const Net& net() const { return *net_; }
  double band_low() const { return band_low_; }
  double band_high() const { return band_high_; }
  std::size_t vertex_count() const { return adjacency_.size(); }
  std::span<const Index> neighbors(std::size_t ordinal) const { return adjacency_[ordinal]; }
  std::size_t max_degree() const { return max_degree_; }
  std::size_t edge_count() const;

 private:
  const Net* net_;
  double band_low_;
  double band_high_;
  std::vector<std::vector<Index>> adjacency_;
  std::size_t max_degree_ = 0;
};

/// Builds G^M(X, T). Rejects M <= net.delta(). The graph references `net`,
/// which must outlive it.
NetGraph net_graph(const Net& net, double M);

/// |{t in net : d(center, t) < R}|. Requires R > 0.
std::size_t ball_net_count(const FiniteMetricSpace& space, const Net& net, Index center,
                           double R);

}  // namespace padlab
