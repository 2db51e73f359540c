#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padlab/types.hpp"

namespace padlab {

/// Distance oracle behind a FiniteMetricSpace. Implementations are immutable
/// after construction and must be safe for concurrent readers.
class MetricBackend {
 public:
  virtual ~MetricBackend() = default;

  virtual std::size_t size() const = 0;
  virtual double distance(Index i, Index j) const = 0;

  /// Appends to `out`, in ascending index order, every j with
  /// dist(center, j) < radius (or <= radius when `closed`).
  /// The default implementation scans all points.
  virtual void collect_ball(Index center, double radius, bool closed,
                            std::vector<Index>& out) const;
};

/// A finite metric space (X, d). Cheap to copy: copies share the backend.
///
/// Balls are open: ball(x, r) = {y : d(x, y) < r}.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  FiniteMetricSpace(std::shared_ptr<const MetricBackend> backend, std::string label);

  std::size_t size() const { return backend_ ? backend_->size() : 0; }
  bool empty() const { return size() == 0; }
  double dist(Index i, Index j) const { return backend_->distance(i, j); }
  const std::string& label() const { return label_; }
  const MetricBackend& backend() const { return *backend_; }

  std::vector<Index> ball(Index center, double radius) const;
  std::vector<Index> closed_ball(Index center, double radius) const;

  /// Buffer-reusing variants; `out` is cleared first.
  void ball_into(Index center, double radius, std::vector<Index>& out) const;
  void closed_ball_into(Index center, double radius, std::vector<Index>& out) const;

  /// Exact diameter by exhaustive pairs. O(n^2).
  double diameter() const;

  /// dist(x, S) = min over members; +infinity for the empty set.
  double dist_to_set(Index x, std::span<const Index> set) const;

 private:
  std::shared_ptr<const MetricBackend> backend_;
  std::string label_;
};

/// First violated metric axiom found, if any.
struct AxiomViolation {
  Index i = 0, j = 0, k = 0;
  std::string what;
};

/// Checks d(i,i)=0, symmetry, nonnegativity and the triangle inequality (up to
/// 2e-12 absolute, the rounding applied to Euclidean distances).
/// Exhaustive over all triples when n <= exhaustive_limit, otherwise over
/// `sampled_triples` random triples drawn from `seed`.
std::optional<AxiomViolation> check_metric_axioms(const FiniteMetricSpace& space,
                                                  std::size_t exhaustive_limit = 300,
                                                  std::size_t sampled_triples = 100000,
                                                  std::uint64_t seed = 0);

/// (X, d, mu) with a strictly positive mass on every point.
class MeasuredSpace {
 public:
  MeasuredSpace(FiniteMetricSpace base, std::vector<double> mass);
  static MeasuredSpace unit(FiniteMetricSpace base);

  const FiniteMetricSpace& base() const { return base_; }
  double mass(Index i) const { return mass_[i]; }
  double ball_mass(Index center, double radius) const;

 private:
  FiniteMetricSpace base_;
  std::vector<double> mass_;
};

// ---- backends ------------------------------------------------------------

enum class Norm { L1, L2, LInf };

std::string to_string(Norm norm);
Norm parse_norm(const std::string& text);

/// Points on the real line; ball queries by binary search.
std::shared_ptr<const MetricBackend> make_line_backend(std::vector<double> coords);

/// Points in R^dim under an l1, l2 or l-infinity norm. Euclidean distances are
/// rounded to 12 decimal places so results do not depend on sqrt/FMA details.
std::shared_ptr<const MetricBackend> make_coordinate_backend(std::size_t dim,
                                                             std::vector<double> coords,
                                                             Norm norm);

/// Integer grid {0..w-1} x {0..h-1}, point (x, y) stored at index y*w + x.
std::shared_ptr<const MetricBackend> make_grid_backend(std::size_t width, std::size_t height,
                                                       Norm norm);

/// Dense symmetric distance matrix (row-major, n*n entries).
std::shared_ptr<const MetricBackend> make_matrix_backend(std::size_t n,
                                                         std::vector<double> matrix);

}  // namespace padlab
