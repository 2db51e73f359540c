#include "padlab/fixtures.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <queue>
#include <sstream>
#include <vector>

#include "padlab/heisenberg.hpp"
#include "padlab/rng.hpp"

namespace padlab {

FiniteMetricSpace integer_segment(std::size_t n) {
  std::vector<double> coords(n + 1);
  for (std::size_t i = 0; i <= n; ++i) coords[i] = static_cast<double>(i);
  return FiniteMetricSpace(make_line_backend(std::move(coords)),
                           "segment:" + std::to_string(n));
}

FiniteMetricSpace grid_2d(std::size_t width, std::size_t height, Norm norm) {
  require(width > 0 && height > 0, "grid dimensions must be positive");
  return FiniteMetricSpace(make_grid_backend(width, height, norm),
                           "grid:" + std::to_string(width) + "x" + std::to_string(height) +
                               ":" + to_string(norm));
}

namespace {

std::vector<double> cloud_coordinates(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> coords(n * dim);
  for (double& x : coords) x = 100.0 * rng.uniform();
  return coords;
}

}  // namespace

FiniteMetricSpace euclidean_cloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
  require(dim > 0, "cloud dimension must be positive");
  return FiniteMetricSpace(make_coordinate_backend(dim, cloud_coordinates(n, dim, seed), Norm::L2),
                           "cloud:" + std::to_string(n) + ":" + std::to_string(dim) +
                               ":seed=" + std::to_string(seed));
}

namespace {

void guard_dense(std::size_t n) {
  require(n <= kMaxDensePoints, "graph metric with " + std::to_string(n) +
                                    " vertices exceeds the dense-matrix limit of " +
                                    std::to_string(kMaxDensePoints));
}

using Adjacency = std::vector<std::vector<std::pair<Index, double>>>;

// All-pairs shortest paths: BFS when every weight is 1, Dijkstra otherwise.
std::vector<double> all_pairs(const Adjacency& adj, bool unit_weights) {
  const std::size_t n = adj.size();
  std::vector<double> matrix(n * n, kInfinity);
  for (std::size_t s = 0; s < n; ++s) {
    double* row = &matrix[s * n];
    row[s] = 0.0;
    if (unit_weights) {
      std::queue<Index> queue;
      queue.push(static_cast<Index>(s));
      while (!queue.empty()) {
        const Index v = queue.front();
        queue.pop();
        for (const auto& [w, len] : adj[v]) {
          if (row[w] == kInfinity) {
            row[w] = row[v] + 1.0;
            queue.push(w);
          }
        }
      }
    } else {
      using Item = std::pair<double, Index>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      heap.emplace(0.0, static_cast<Index>(s));
      while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d > row[v]) continue;
        for (const auto& [w, len] : adj[v]) {
          if (d + len < row[w]) {
            row[w] = d + len;
            heap.emplace(row[w], w);
          }
        }
      }
    }
    for (std::size_t j = 0; j < n; ++j)
      if (row[j] == kInfinity)
        throw PreconditionError("graph is disconnected: no path from " + std::to_string(s) +
                                " to " + std::to_string(j));
  }
  return matrix;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw PreconditionError("invalid " + what + " '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

FiniteMetricSpace balanced_tree(std::size_t branching, std::size_t depth) {
  require(branching >= 1, "tree branching must be >= 1");
  std::size_t n = 0, level = 1;
  for (std::size_t d = 0; d <= depth; ++d) {
    n += level;
    guard_dense(n);
    level *= branching;
  }
  Adjacency adj(n);
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t parent = (v - 1) / branching;
    adj[v].emplace_back(static_cast<Index>(parent), 1.0);
    adj[parent].emplace_back(static_cast<Index>(v), 1.0);
  }
  return FiniteMetricSpace(make_matrix_backend(n, all_pairs(adj, true)),
                           "tree:" + std::to_string(branching) + ":" + std::to_string(depth));
}

FiniteMetricSpace load_point_cloud(std::istream& in, Norm norm, std::string label) {
  std::vector<double> coords;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<double> point;
    double x = 0.0;
    while (fields >> x) point.push_back(x);
    if (!fields.eof())
      throw PreconditionError("line " + std::to_string(line_no) + ": non-numeric coordinate");
    if (point.empty()) continue;
    if (dim == 0) dim = point.size();
    if (point.size() != dim)
      throw PreconditionError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(dim) + " coordinates");
    coords.insert(coords.end(), point.begin(), point.end());
  }
  if (dim == 0) dim = 1;
  return FiniteMetricSpace(make_coordinate_backend(dim, std::move(coords), norm),
                           std::move(label));
}

FiniteMetricSpace load_edge_list(std::istream& in, std::string label) {
  struct Edge {
    Index u, v;
    double w;
  };
  std::vector<Edge> edges;
  std::size_t n = 0;
  bool unit = true;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    long long u = -1, v = -1;
    if (!(fields >> u)) continue;
    if (!(fields >> v) || u < 0 || v < 0)
      throw PreconditionError("line " + std::to_string(line_no) + ": expected 'u v [w]'");
    double w = 1.0;
    if (fields >> w) {
      if (!(w > 0.0))
        throw PreconditionError("line " + std::to_string(line_no) + ": weight must be positive");
    } else if (!fields.eof()) {
      throw PreconditionError("line " + std::to_string(line_no) + ": malformed weight");
    }
    if (w != 1.0) unit = false;
    edges.push_back({static_cast<Index>(u), static_cast<Index>(v), w});
    n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(u, v)) + 1);
  }
  guard_dense(n);
  Adjacency adj(n);
  for (const auto& e : edges) {
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  return FiniteMetricSpace(make_matrix_backend(n, all_pairs(adj, unit)), std::move(label));
}

FiniteMetricSpace make_fixture(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw PreconditionError("empty fixture spec");
  const std::string& kind = parts[0];

  if (kind == "segment" && parts.size() == 2) return integer_segment(parse_count(parts[1], "segment length"));

  if (kind == "grid" && (parts.size() == 2 || parts.size() == 3)) {
    const auto dims = split(parts[1], 'x');
    if (dims.size() != 2) throw PreconditionError("grid spec must look like grid:<w>x<h>[:norm]");
    const Norm norm = parts.size() == 3 ? parse_norm(parts[2]) : Norm::LInf;
    return grid_2d(parse_count(dims[0], "grid width"), parse_count(dims[1], "grid height"), norm);
  }

  if (kind == "heis" && parts.size() == 2)
    return heisenberg_ball(static_cast<int>(parse_count(parts[1], "heisenberg radius")));

  if (kind == "cloud" && (parts.size() == 3 || parts.size() == 4)) {
    std::uint64_t seed = 0;
    if (parts.size() == 4) {
      if (parts[3].rfind("seed=", 0) != 0) throw PreconditionError("cloud seed must be 'seed=<n>'");
      seed = parse_count(parts[3].substr(5), "cloud seed");
    }
    return euclidean_cloud(parse_count(parts[1], "cloud size"), parse_count(parts[2], "cloud dimension"),
                           seed);
  }

  if (kind == "tree" && parts.size() == 3)
    return balanced_tree(parse_count(parts[1], "tree branching"), parse_count(parts[2], "tree depth"));

  if (kind == "points" && (parts.size() == 2 || parts.size() == 3)) {
    std::ifstream in(parts[1]);
    if (!in) throw PreconditionError("cannot open point file '" + parts[1] + "'");
    return load_point_cloud(in, parts.size() == 3 ? parse_norm(parts[2]) : Norm::L2, spec);
  }

  if (kind == "edges" && parts.size() == 2) {
    std::ifstream in(parts[1]);
    if (!in) throw PreconditionError("cannot open edge file '" + parts[1] + "'");
    return load_edge_list(in, spec);
  }

  throw PreconditionError("unknown fixture spec '" + spec + "'");
}

namespace {

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string write_fixture(const std::string& spec, std::ostream& out, const std::string& path) {
  const auto parts = split(spec, ':');
  const std::string kind = parts.empty() ? "" : parts[0];

  if (kind == "segment" || kind == "grid" || kind == "cloud") {
    const FiniteMetricSpace space = make_fixture(spec);
    if (kind == "segment") {
      for (Index i = 0; i < space.size(); ++i) out << i << '\n';
      return "points:" + path + ":l1";
    }
    if (kind == "grid") {
      const auto dims = split(parts[1], 'x');
      const std::size_t w = parse_count(dims[0], "grid width");
      for (std::size_t i = 0; i < space.size(); ++i) out << i % w << ' ' << i / w << '\n';
      return "points:" + path + ":" + (parts.size() == 3 ? parts[2] : "linf");
    }
    const std::size_t dim = parse_count(parts[2], "cloud dimension");
    const std::uint64_t seed = parts.size() == 4 ? parse_count(parts[3].substr(5), "cloud seed") : 0;
    const auto coords = cloud_coordinates(space.size(), dim, seed);
    for (std::size_t i = 0; i < space.size(); ++i) {
      for (std::size_t k = 0; k < dim; ++k) out << (k ? " " : "") << format_real(coords[i * dim + k]);
      out << '\n';
    }
    return "points:" + path + ":l2";
  }

  if (kind == "points" || kind == "edges") {
    if (parts.size() < 2) throw PreconditionError("malformed fixture spec '" + spec + "'");
    std::ifstream in(parts[1]);
    if (!in) throw PreconditionError("cannot open '" + parts[1] + "'");
    out << in.rdbuf();
    if (kind == "points") return "points:" + path + (parts.size() == 3 ? ":" + parts[2] : "");
    return "edges:" + path;
  }

  if (kind == "tree") {
    const FiniteMetricSpace space = make_fixture(spec);
    const std::size_t b = parse_count(parts[1], "tree branching");
    for (std::size_t v = 1; v < space.size(); ++v) out << (v - 1) / b << ' ' << v << '\n';
    return "edges:" + path;
  }

  const FiniteMetricSpace space = make_fixture(spec);
  guard_dense(space.size());
  for (Index i = 0; i < space.size(); ++i)
    for (Index j = i + 1; j < space.size(); ++j)
      out << i << ' ' << j << ' ' << format_real(space.dist(i, j)) << '\n';
  return "edges:" + path;
}

}  // namespace padlab
