#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "padlab/metric_space.hpp"

namespace padlab {

/// Integer points {0, 1, ..., n} on the line (n + 1 points).
FiniteMetricSpace integer_segment(std::size_t n);

/// Integer grid {0..w-1} x {0..h-1}; point (x, y) has index y*w + x.
FiniteMetricSpace grid_2d(std::size_t width, std::size_t height, Norm norm);

/// n points drawn uniformly from [0, 100)^dim, Euclidean metric.
FiniteMetricSpace euclidean_cloud(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Complete `branching`-ary tree of the given depth with the graph metric.
/// Node 0 is the root; children of node v are b*v+1 .. b*v+b.
FiniteMetricSpace balanced_tree(std::size_t branching, std::size_t depth);

/// Point cloud: one point per line, whitespace-separated coordinates.
FiniteMetricSpace load_point_cloud(std::istream& in, Norm norm, std::string label);

/// Edge list "u v [w]" per line, 0-based ids, optional positive weight (default 1).
/// The metric is the shortest-path metric; the graph must be connected.
FiniteMetricSpace load_edge_list(std::istream& in, std::string label);

/// Dense-matrix spaces are refused above this size (memory guard).
inline constexpr std::size_t kMaxDensePoints = 8000;

/// Builds a space from a fixture spec string:
///   segment:<n>            integer_segment(n)
///   grid:<w>x<h>[:<norm>]  grid_2d, norm l1|l2|linf (default linf)
///   heis:<radius>          heisenberg_ball(radius)
///   cloud:<n>:<dim>[:seed=<s>]
///   tree:<branching>:<depth>
///   points:<path>[:<norm>] load_point_cloud (default l2)
///   edges:<path>           load_edge_list
/// Throws PreconditionError on a malformed or unknown spec.
FiniteMetricSpace make_fixture(const std::string& spec);

/// Writes the fixture named by `spec` to `out` in one of the two ingestion
/// formats and returns the spec that reloads it from `path`: coordinate
/// fixtures become point clouds ("points:<path>:<norm>"), everything else a
/// weighted edge list ("edges:<path>") whose shortest-path metric is the
/// original one. Graph fixtures are limited to kMaxDensePoints points.
std::string write_fixture(const std::string& spec, std::ostream& out, const std::string& path);

}  // namespace padlab
