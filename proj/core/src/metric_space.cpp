#include "padlab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "padlab/rng.hpp"

namespace padlab {

void MetricBackend::collect_ball(Index center, double radius, bool closed,
                                 std::vector<Index>& out) const {
  const std::size_t n = size();
  for (std::size_t j = 0; j < n; ++j) {
    const double d = distance(center, static_cast<Index>(j));
    if (d < radius || (closed && d == radius)) out.push_back(static_cast<Index>(j));
  }
}

FiniteMetricSpace::FiniteMetricSpace(std::shared_ptr<const MetricBackend> backend,
                                     std::string label)
    : backend_(std::move(backend)), label_(std::move(label)) {
  require(backend_ != nullptr, "metric space requires a backend");
}

std::vector<Index> FiniteMetricSpace::ball(Index center, double radius) const {
  std::vector<Index> out;
  ball_into(center, radius, out);
  return out;
}

std::vector<Index> FiniteMetricSpace::closed_ball(Index center, double radius) const {
  std::vector<Index> out;
  closed_ball_into(center, radius, out);
  return out;
}

void FiniteMetricSpace::ball_into(Index center, double radius, std::vector<Index>& out) const {
  out.clear();
  if (radius <= 0.0) return;
  backend_->collect_ball(center, radius, false, out);
}

void FiniteMetricSpace::closed_ball_into(Index center, double radius,
                                         std::vector<Index>& out) const {
  out.clear();
  if (radius < 0.0) return;
  backend_->collect_ball(center, radius, true, out);
}

double FiniteMetricSpace::diameter() const {
  double diam = 0.0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      diam = std::max(diam, dist(static_cast<Index>(i), static_cast<Index>(j)));
  return diam;
}

double FiniteMetricSpace::dist_to_set(Index x, std::span<const Index> set) const {
  double best = kInfinity;
  for (Index y : set) best = std::min(best, dist(x, y));
  return best;
}

std::optional<AxiomViolation> check_metric_axioms(const FiniteMetricSpace& space,
                                                  std::size_t exhaustive_limit,
                                                  std::size_t sampled_triples,
                                                  std::uint64_t seed) {
  const std::size_t n = space.size();
  auto check_pair = [&](Index i, Index j) -> std::optional<AxiomViolation> {
    const double dij = space.dist(i, j);
    if (i == j && dij != 0.0) return AxiomViolation{i, j, i, "d(i,i) != 0"};
    if (dij < 0.0 || std::isnan(dij)) return AxiomViolation{i, j, j, "negative distance"};
    if (dij != space.dist(j, i)) return AxiomViolation{i, j, j, "asymmetric"};
    return std::nullopt;
  };
  auto check_triple = [&](Index i, Index j, Index k) -> std::optional<AxiomViolation> {
    // Slack covers the 12-digit rounding of Euclidean distances (3 x 0.5e-12) plus an ulp.
    const double sum = space.dist(i, j) + space.dist(j, k);
    if (space.dist(i, k) > sum + 2e-12 + 4 * std::numeric_limits<double>::epsilon() * sum)
      return AxiomViolation{i, j, k, "triangle inequality"};
    return std::nullopt;
  };

  if (n <= exhaustive_limit) {
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (auto v = check_pair(i, j)) return v;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k)
          if (auto v = check_triple(i, j, k)) return v;
    return std::nullopt;
  }

  Rng rng(seed);
  for (std::size_t s = 0; s < sampled_triples; ++s) {
    const auto i = static_cast<Index>(rng.below(n));
    const auto j = static_cast<Index>(rng.below(n));
    const auto k = static_cast<Index>(rng.below(n));
    if (auto v = check_pair(i, i)) return v;
    if (auto v = check_pair(i, j)) return v;
    if (auto v = check_triple(i, j, k)) return v;
  }
  return std::nullopt;
}

// ---- MeasuredSpace -------------------------------------------------------

MeasuredSpace::MeasuredSpace(FiniteMetricSpace base, std::vector<double> mass)
    : base_(std::move(base)), mass_(std::move(mass)) {
  require(mass_.size() == base_.size(), "mass vector size must match point count");
  for (double m : mass_) require(m > 0.0, "every mass must be strictly positive");
}

MeasuredSpace MeasuredSpace::unit(FiniteMetricSpace base) {
  std::vector<double> mass(base.size(), 1.0);
  return MeasuredSpace(std::move(base), std::move(mass));
}

double MeasuredSpace::ball_mass(Index center, double radius) const {
  double total = 0.0;
  for (Index j : base_.ball(center, radius)) total += mass_[j];
  return total;
}

// ---- backends ------------------------------------------------------------

std::string to_string(Norm norm) {
  switch (norm) {
    case Norm::L1: return "l1";
    case Norm::L2: return "l2";
    case Norm::LInf: return "linf";
  }
  return "?";
}

Norm parse_norm(const std::string& text) {
  if (text == "l1") return Norm::L1;
  if (text == "l2") return Norm::L2;
  if (text == "linf") return Norm::LInf;
  throw PreconditionError("unknown metric '" + text + "' (expected l1, l2 or linf)");
}

namespace {

double round12(double d) { return std::round(d * 1e12) / 1e12; }

class LineBackend final : public MetricBackend {
 public:
  explicit LineBackend(std::vector<double> coords) : coords_(std::move(coords)) {
    order_.resize(coords_.size());
    std::iota(order_.begin(), order_.end(), Index{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Index a, Index b) { return coords_[a] < coords_[b]; });
    sorted_.reserve(coords_.size());
    for (Index i : order_) sorted_.push_back(coords_[i]);
    identity_ = std::is_sorted(coords_.begin(), coords_.end());
  }

  std::size_t size() const override { return coords_.size(); }
  double distance(Index i, Index j) const override { return std::abs(coords_[i] - coords_[j]); }

  void collect_ball(Index center, double radius, bool closed,
                    std::vector<Index>& out) const override {
    const double c = coords_[center];
    const double slack = 1e-9 * (std::abs(c) + radius + 1.0);
    auto lo = std::lower_bound(sorted_.begin(), sorted_.end(), c - radius - slack);
    auto hi = std::upper_bound(lo, sorted_.end(), c + radius + slack);
    const std::size_t first = out.size();
    for (auto it = lo; it != hi; ++it) {
      const Index j = order_[static_cast<std::size_t>(it - sorted_.begin())];
      const double d = distance(center, j);
      if (d < radius || (closed && d == radius)) out.push_back(j);
    }
    if (!identity_) std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
  }

 private:
  std::vector<double> coords_;
  std::vector<double> sorted_;
  std::vector<Index> order_;
  bool identity_ = true;
};

class CoordinateBackend final : public MetricBackend {
 public:
  CoordinateBackend(std::size_t dim, std::vector<double> coords, Norm norm)
      : dim_(dim), coords_(std::move(coords)), norm_(norm) {
    require(dim_ > 0, "point dimension must be positive");
    require(coords_.size() % dim_ == 0, "coordinate count is not a multiple of dimension");
  }

  std::size_t size() const override { return coords_.size() / dim_; }

  double distance(Index i, Index j) const override {
    const double* a = &coords_[std::size_t{i} * dim_];
    const double* b = &coords_[std::size_t{j} * dim_];
    double acc = 0.0;
    switch (norm_) {
      case Norm::L1:
        for (std::size_t k = 0; k < dim_; ++k) acc += std::abs(a[k] - b[k]);
        return acc;
      case Norm::LInf:
        for (std::size_t k = 0; k < dim_; ++k) acc = std::max(acc, std::abs(a[k] - b[k]));
        return acc;
      case Norm::L2:
        for (std::size_t k = 0; k < dim_; ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
        return round12(std::sqrt(acc));
    }
    return acc;
  }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  Norm norm_;
};

class GridBackend final : public MetricBackend {
 public:
  GridBackend(std::size_t width, std::size_t height, Norm norm)
      : width_(width), height_(height), norm_(norm) {}

  std::size_t size() const override { return width_ * height_; }

  double distance(Index i, Index j) const override {
    const double dx = std::abs(static_cast<double>(i % width_) - static_cast<double>(j % width_));
    const double dy = std::abs(static_cast<double>(i / width_) - static_cast<double>(j / width_));
    switch (norm_) {
      case Norm::L1: return dx + dy;
      case Norm::LInf: return std::max(dx, dy);
      case Norm::L2: return round12(std::sqrt(dx * dx + dy * dy));
    }
    return 0.0;
  }

  void collect_ball(Index center, double radius, bool closed,
                    std::vector<Index>& out) const override {
    const auto reach = static_cast<long long>(std::ceil(radius));
    const auto cx = static_cast<long long>(center % width_);
    const auto cy = static_cast<long long>(center / width_);
    const long long y0 = std::max(0LL, cy - reach);
    const long long y1 = std::min(static_cast<long long>(height_) - 1, cy + reach);
    const long long x0 = std::max(0LL, cx - reach);
    const long long x1 = std::min(static_cast<long long>(width_) - 1, cx + reach);
    for (long long y = y0; y <= y1; ++y) {
      for (long long x = x0; x <= x1; ++x) {
        const auto j = static_cast<Index>(y * static_cast<long long>(width_) + x);
        const double d = distance(center, j);
        if (d < radius || (closed && d == radius)) out.push_back(j);
      }
    }
  }

 private:
  std::size_t width_, height_;
  Norm norm_;
};

class MatrixBackend final : public MetricBackend {
 public:
  MatrixBackend(std::size_t n, std::vector<double> matrix) : n_(n), matrix_(std::move(matrix)) {
    require(matrix_.size() == n_ * n_, "distance matrix must have n*n entries");
  }
  std::size_t size() const override { return n_; }
  double distance(Index i, Index j) const override { return matrix_[std::size_t{i} * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> matrix_;
};

}  // namespace

std::shared_ptr<const MetricBackend> make_line_backend(std::vector<double> coords) {
  return std::make_shared<LineBackend>(std::move(coords));
}

std::shared_ptr<const MetricBackend> make_coordinate_backend(std::size_t dim,
                                                             std::vector<double> coords,
                                                             Norm norm) {
  if (dim == 1) return make_line_backend(std::move(coords));
  return std::make_shared<CoordinateBackend>(dim, std::move(coords), norm);
}

std::shared_ptr<const MetricBackend> make_grid_backend(std::size_t width, std::size_t height,
                                                       Norm norm) {
  return std::make_shared<GridBackend>(width, height, norm);
}

std::shared_ptr<const MetricBackend> make_matrix_backend(std::size_t n,
                                                         std::vector<double> matrix) {
  return std::make_shared<MatrixBackend>(n, std::move(matrix));
}

}  // namespace padlab
