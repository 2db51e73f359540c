#include "padlab/carving.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>

namespace padlab {

namespace {

std::vector<Index> resolve_order(std::size_t count, std::span<const Index> order) {
  std::vector<Index> out(order.begin(), order.end());
  if (out.empty()) {
    out.resize(count);
    std::iota(out.begin(), out.end(), Index{0});
  }
  require(out.size() == count, "coloring order must be a permutation of the net ordinals");
  std::vector<char> seen(count, 0);
  for (Index v : out) {
    require(v < count && !seen[v], "coloring order must be a permutation of the net ordinals");
    seen[v] = 1;
  }
  return out;
}

constexpr std::uint32_t kUncolored = ~std::uint32_t{0};

// Least color not present in `used` (stamped with `stamp`).
std::uint32_t least_free(std::vector<std::size_t>& used, std::size_t stamp) {
  std::uint32_t c = 0;
  while (c < used.size() && used[c] == stamp) ++c;
  return c;
}

}  // namespace

Coloring greedy_color(const NetGraph& graph, std::span<const Index> order) {
  Coloring out;
  out.band_high = graph.band_high();
  out.order = resolve_order(graph.vertex_count(), order);
  out.color.assign(graph.vertex_count(), kUncolored);
  std::vector<std::size_t> used(graph.max_degree() + 1, 0);
  std::size_t stamp = 0;
  for (Index v : out.order) {
    ++stamp;
    for (Index w : graph.neighbors(v))
      if (out.color[w] != kUncolored && out.color[w] < used.size()) used[out.color[w]] = stamp;
    const std::uint32_t c = least_free(used, stamp);
    out.color[v] = c;
    out.num_colors = std::max<std::size_t>(out.num_colors, c + 1);
  }
  return out;
}

Coloring greedy_color_band(const Net& net, double band_high, std::span<const Index> order) {
  require(band_high > net.delta(), "coloring band must exceed the net separation");
  const auto& space = net.space();
  Coloring out;
  out.band_high = band_high;
  out.order = resolve_order(net.size(), order);
  out.color.assign(net.size(), kUncolored);
  std::vector<std::size_t> used;
  std::vector<Index> buffer;
  std::size_t stamp = 0;
  for (Index v : out.order) {
    ++stamp;
    const Index x = net.member(v);
    space.closed_ball_into(x, band_high, buffer);
    for (Index y : buffer) {
      const Index w = net.ordinal(y);
      if (w == kNoIndex || w == v || out.color[w] == kUncolored) continue;
      if (space.dist(x, y) < net.delta()) continue;
      if (out.color[w] >= used.size()) used.resize(out.color[w] + 1, 0);
      used[out.color[w]] = stamp;
    }
    const std::uint32_t c = least_free(used, stamp);
    out.color[v] = c;
    out.num_colors = std::max<std::size_t>(out.num_colors, c + 1);
  }
  return out;
}

bool is_proper(const Coloring& coloring, const NetGraph& graph) {
  if (coloring.color.size() != graph.vertex_count()) return false;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    for (Index w : graph.neighbors(v))
      if (coloring.color[v] == coloring.color[w]) return false;
  return true;
}

// ---- radii ---------------------------------------------------------------

RadiusAssignment::RadiusAssignment(std::vector<double> radii, double l_, double M_)
    : t(std::move(radii)), l(l_), M(M_) {
  require(l >= 0.0 && l <= M, "radius bounds require 0 <= l <= M");
  for (double r : t) require(r >= l && r <= M, "carving radius outside [l, M]");
}

RadiusAssignment RadiusAssignment::constant(std::size_t count, double value, double l, double M) {
  return RadiusAssignment(std::vector<double>(count, value), l, M);
}

RadiusAssignment RadiusAssignment::sample(std::size_t count, const RadiusLaw& law, Rng& rng) {
  std::vector<double> t(count);
  for (double& r : t) r = sample_radius(law, rng);
  return RadiusAssignment(std::move(t), law_lower(law), law_upper(law));
}

// ---- layers --------------------------------------------------------------

PartitionLayer::PartitionLayer(FiniteMetricSpace space, std::span<const Index> center_of_point,
                               std::shared_ptr<const RadiusAssignment> radii,
                               std::size_t num_colors)
    : space_(std::move(space)), radii_(std::move(radii)), num_colors_(num_colors) {
  require(center_of_point.size() == space_.size(), "assignment must cover every point");
  std::map<Index, std::vector<Index>> by_center;
  for (Index p = 0; p < center_of_point.size(); ++p) by_center[center_of_point[p]].push_back(p);
  cluster_of_.assign(space_.size(), kNoIndex);
  clusters_.reserve(by_center.size());
  for (auto& [center, points] : by_center) {
    const auto id = static_cast<Index>(clusters_.size());
    for (Index p : points) cluster_of_[p] = id;
    clusters_.push_back({center, std::move(points)});
  }
}

void PartitionLayer::write_csv(std::ostream& out) const {
  out << "point_id,cluster_id,center_id\n";
  for (Index p = 0; p < cluster_of_.size(); ++p)
    out << p << ',' << cluster_of_[p] << ',' << clusters_[cluster_of_[p]].center << '\n';
}

// ---- carving -------------------------------------------------------------

CarvingIndex::CarvingIndex(const Net& net, const Coloring& coloring, double M) {
  require(coloring.color.size() == net.size(), "coloring does not match the net");
  const auto& space = net.space();
  const std::size_t n = space.size();
  offsets_.assign(n + 1, 0);
  std::vector<Index> buffer;
  std::vector<Candidate> row;
  for (Index p = 0; p < n; ++p) {
    space.ball_into(p, M, buffer);
    row.clear();
    for (Index x : buffer) {
      const Index k = net.ordinal(x);
      if (k != kNoIndex) row.push_back({k, coloring.color[k], space.dist(p, x)});
    }
    std::sort(row.begin(), row.end(), [](const Candidate& a, const Candidate& b) {
      return a.color != b.color ? a.color < b.color : a.ordinal < b.ordinal;
    });
    entries_.insert(entries_.end(), row.begin(), row.end());
    offsets_[p + 1] = entries_.size();
  }
}

Index CarvingIndex::assign(Index point, std::span<const double> t) const {
  const auto cands = candidates(point);
  for (std::size_t k = 0; k < cands.size(); ++k) {
    if (!(cands[k].distance < t[cands[k].ordinal])) continue;
    for (std::size_t j = k + 1; j < cands.size() && cands[j].color == cands[k].color; ++j)
      if (cands[j].distance < t[cands[j].ordinal])
        throw ConstructionError("point " + std::to_string(point) +
                                " is covered by two centers of color " +
                                std::to_string(cands[k].color) + "; coloring is not proper");
    return cands[k].ordinal;
  }
  throw ConstructionError("point " + std::to_string(point) + " is covered by no carving ball");
}

PartitionLayer carve(const FiniteMetricSpace& space, const Net& net, const CarvingIndex& index,
                     const RadiusAssignment& radii, std::size_t num_colors) {
  require(radii.t.size() == net.size(), "radius assignment does not match the net");
  std::vector<Index> center(space.size());
  for (Index p = 0; p < space.size(); ++p) center[p] = net.member(index.assign(p, radii.t));
  return PartitionLayer(space, center, std::make_shared<const RadiusAssignment>(radii),
                        num_colors);
}

PartitionLayer carve(const FiniteMetricSpace& space, const Net& net, const Coloring& coloring,
                     const RadiusAssignment& radii) {
  require(radii.l >= net.eps(), "carving requires l >= net eps so every point is covered");
  require(coloring.band_high >= 2.0 * radii.M,
          "coloring must be proper for the net graph with band 2M");
  const CarvingIndex index(net, coloring, radii.M);
  return carve(space, net, index, radii, coloring.num_colors);
}

bool is_cut(const PartitionLayer& layer, Index center, double r) {
  require(r > 0.0, "probe radius must be positive");
  const auto ball = layer.space().ball(center, r);
  for (Index p : ball)
    if (layer.cluster_of(p) != layer.cluster_of(ball.front())) return true;
  return false;
}

}  // namespace padlab
