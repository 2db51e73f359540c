#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "padlab/metric_space.hpp"

namespace padlab {

/// Element (a, b, c) of the discrete Heisenberg group H3(Z), encoding the
/// unipotent matrix [[1, a, c], [0, 1, b], [0, 0, 1]]. The product is
/// (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b').
struct HeisenbergElement {
  std::int64_t a = 0, b = 0, c = 0;

  friend constexpr HeisenbergElement operator*(const HeisenbergElement& g,
                                               const HeisenbergElement& h) {
    return {g.a + h.a, g.b + h.b, g.c + h.c + g.a * h.b};
  }
  constexpr HeisenbergElement inverse() const { return {-a, -b, a * b - c}; }
  friend constexpr bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
  friend constexpr auto operator<=>(const HeisenbergElement&, const HeisenbergElement&) = default;
};

/// The standard symmetric generating set {x, x^-1, y, y^-1}.
inline constexpr std::array<HeisenbergElement, 4> kHeisenbergGenerators{{
    {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}}};

inline constexpr int kMaxHeisenbergRadius = 16;

/// Word-metric ball of the given radius around the identity, as a metric
/// space. Points are listed in breadth-first order (index 0 is the identity)
/// and the distance is the word metric of the whole group.
/// Rejects radius < 1 or radius > kMaxHeisenbergRadius.
FiniteMetricSpace heisenberg_ball(int radius);

/// Elements of the radius-`radius` ball in breadth-first order.
std::vector<HeisenbergElement> heisenberg_ball_elements(int radius);

/// sizes[k] = number of elements of word length <= k, for k = 0..radius.
std::vector<std::size_t> heisenberg_ball_sizes(int radius);

}  // namespace padlab
