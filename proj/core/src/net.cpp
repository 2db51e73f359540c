#include "padlab/net.hpp"

#include <algorithm>
#include <numeric>

namespace padlab {

Net::Net(FiniteMetricSpace space, std::vector<Index> members, double eps, double delta)
    : space_(std::move(space)), members_(std::move(members)), eps_(eps), delta_(delta) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  ordinal_of_.assign(space_.size(), kNoIndex);
  for (std::size_t k = 0; k < members_.size(); ++k) {
    require(members_[k] < space_.size(), "net member out of range");
    ordinal_of_[members_[k]] = static_cast<Index>(k);
  }
}

Net build_net(const FiniteMetricSpace& space, double eps, double delta,
              std::span<const Index> order) {
  require(delta > 0.0, "net separation delta must be positive");
  require(delta <= eps, "net separation delta must not exceed covering radius eps");
  const std::size_t n = space.size();

  std::vector<Index> identity;
  if (order.empty()) {
    identity.resize(n);
    std::iota(identity.begin(), identity.end(), Index{0});
    order = identity;
  }
  require(order.size() == n, "sweep order must be a permutation of the points");
  std::vector<char> seen(n, 0);
  for (Index p : order) {
    require(p < n && !seen[p], "sweep order must be a permutation of the points");
    seen[p] = 1;
  }

  std::vector<char> admitted(n, 0);
  std::vector<Index> members;
  std::vector<Index> buffer;
  for (Index p : order) {
    space.ball_into(p, delta, buffer);
    const bool blocked =
        std::any_of(buffer.begin(), buffer.end(), [&](Index q) { return admitted[q] != 0; });
    if (!blocked) {
      admitted[p] = 1;
      members.push_back(p);
    }
  }

  Net net(space, std::move(members), eps, delta);
  // With delta == eps maximality already gives eps-covering.
  if (delta < eps) {
    for (Index p = 0; p < n; ++p) {
      space.ball_into(p, eps, buffer);
      if (std::none_of(buffer.begin(), buffer.end(), [&](Index q) { return net.contains(q); }))
        throw ConstructionError("greedy net does not eps-cover point " + std::to_string(p));
    }
  }
  return net;
}

bool is_valid_net(const Net& net) {
  const auto& space = net.space();
  const auto members = net.members();
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b)
      if (space.dist(members[a], members[b]) < net.delta()) return false;
  for (Index p = 0; p < space.size(); ++p) {
    const bool covered = std::any_of(members.begin(), members.end(),
                                     [&](Index t) { return space.dist(p, t) < net.eps(); });
    if (!covered) return false;
  }
  return true;
}

NetGraph::NetGraph(const Net& net, double band_high)
    : net_(&net), band_low_(net.delta()), band_high_(band_high), adjacency_(net.size()) {
  std::vector<Index> buffer;
  const auto& space = net.space();
  for (std::size_t k = 0; k < net.size(); ++k) {
    const Index x = net.member(k);
    space.closed_ball_into(x, band_high_, buffer);
    for (Index y : buffer) {
      if (y == x || !net.contains(y)) continue;
      if (space.dist(x, y) >= band_low_) adjacency_[k].push_back(net.ordinal(y));
    }
    max_degree_ = std::max(max_degree_, adjacency_[k].size());
  }
}

std::size_t NetGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nbrs : adjacency_) twice += nbrs.size();
  return twice / 2;
}

NetGraph net_graph(const Net& net, double M) {
  require(M > net.delta(), "net graph band M must exceed the net separation delta");
  return NetGraph(net, M);
}

std::size_t ball_net_count(const FiniteMetricSpace& space, const Net& net, Index center,
                           double R) {
  require(R > 0.0, "ball radius must be positive");
  const auto ball = space.ball(center, R);
  return static_cast<std::size_t>(
      std::count_if(ball.begin(), ball.end(), [&](Index q) { return net.contains(q); }));
}

}  // namespace padlab
