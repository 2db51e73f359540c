#include "padlab/heisenberg.hpp"

#include <string>

namespace padlab {
namespace {

constexpr std::uint8_t kUnreached = 0xff;

// Word lengths of every element of length <= max_length, stored densely over
// the box |a|, |b| <= L, |c| <= L^2 (a word of length L changes c by at most L
// per letter).
class LengthTable {
 public:
  explicit LengthTable(int max_length)
      : max_length_(max_length),
        span_ab_(2 * max_length + 1),
        span_c_(2 * std::int64_t{max_length} * max_length + 1),
        lengths_(static_cast<std::size_t>(span_ab_ * span_ab_ * span_c_), kUnreached) {
    std::vector<HeisenbergElement> frontier{HeisenbergElement{}};
    lengths_[slot(HeisenbergElement{})] = 0;
    layers_.push_back(frontier);
    for (int k = 1; k <= max_length_; ++k) {
      std::vector<HeisenbergElement> next;
      for (const auto& g : frontier) {
        for (const auto& s : kHeisenbergGenerators) {
          const HeisenbergElement h = g * s;
          auto& len = lengths_[slot(h)];
          if (len == kUnreached) {
            len = static_cast<std::uint8_t>(k);
            next.push_back(h);
          }
        }
      }
      frontier = next;
      layers_.push_back(std::move(next));
    }
  }

  int length(const HeisenbergElement& g) const {
    if (!in_box(g)) return -1;
    const std::uint8_t len = lengths_[slot(g)];
    return len == kUnreached ? -1 : len;
  }

  const std::vector<std::vector<HeisenbergElement>>& layers() const { return layers_; }

 private:
  bool in_box(const HeisenbergElement& g) const {
    const std::int64_t l = max_length_;
    return g.a >= -l && g.a <= l && g.b >= -l && g.b <= l && g.c >= -l * l && g.c <= l * l;
  }

  std::size_t slot(const HeisenbergElement& g) const {
    const std::int64_t l = max_length_;
    return static_cast<std::size_t>(((g.a + l) * span_ab_ + (g.b + l)) * span_c_ + (g.c + l * l));
  }

  int max_length_;
  std::int64_t span_ab_, span_c_;
  std::vector<std::uint8_t> lengths_;
  std::vector<std::vector<HeisenbergElement>> layers_;
};

void check_radius(int radius) {
  require(radius >= 1, "heisenberg radius must be >= 1");
  require(radius <= kMaxHeisenbergRadius,
          "heisenberg radius " + std::to_string(radius) + " exceeds the memory guard of " +
              std::to_string(kMaxHeisenbergRadius));
}

class HeisenbergBackend final : public MetricBackend {
 public:
  explicit HeisenbergBackend(int radius) : table_(2 * radius) {
    for (int k = 0; k <= radius; ++k)
      for (const auto& g : table_.layers()[static_cast<std::size_t>(k)]) elements_.push_back(g);
    inverses_.reserve(elements_.size());
    for (const auto& g : elements_) inverses_.push_back(g.inverse());
  }

  std::size_t size() const override { return elements_.size(); }

  double distance(Index i, Index j) const override {
    return static_cast<double>(table_.length(inverses_[i] * elements_[j]));
  }

  const std::vector<HeisenbergElement>& elements() const { return elements_; }

 private:
  LengthTable table_;
  std::vector<HeisenbergElement> elements_;
  std::vector<HeisenbergElement> inverses_;
};

}  // namespace

FiniteMetricSpace heisenberg_ball(int radius) {
  check_radius(radius);
  return FiniteMetricSpace(std::make_shared<HeisenbergBackend>(radius),
                           "heis:" + std::to_string(radius));
}

std::vector<HeisenbergElement> heisenberg_ball_elements(int radius) {
  check_radius(radius);
  LengthTable table(radius);
  std::vector<HeisenbergElement> out;
  for (const auto& layer : table.layers()) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

std::vector<std::size_t> heisenberg_ball_sizes(int radius) {
  check_radius(radius);
  LengthTable table(radius);
  std::vector<std::size_t> sizes;
  std::size_t total = 0;
  for (const auto& layer : table.layers()) {
    total += layer.size();
    sizes.push_back(total);
  }
  return sizes;
}

}  // namespace padlab
