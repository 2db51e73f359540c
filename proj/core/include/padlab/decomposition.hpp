#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padlab/carving.hpp"
#include "padlab/metric_space.hpp"
#include "padlab/net.hpp"

namespace padlab {

/// A point subset, sorted ascending without duplicates.
using PointSet = std::vector<Index>;
/// One layer of a cover or decomposition.
using SetFamily = std::vector<PointSet>;

/// Verifiers refuse spaces larger than this rather than sample.
inline constexpr std::size_t kMaxVerifyPoints = 20000;

/// m families of subsets, each family r-disjoint (distinct sets at distance
/// > r_disjoint) and D-bounded, jointly covering the space.
struct Cover {
  FiniteMetricSpace space;
  std::vector<SetFamily> layers;
  double r_disjoint = 0.0;
  double D_bound = 0.0;
};

/// m set families over the whole space claimed to form an (R, D)-padded
/// decomposition associated to `net`.
struct PaddedDecomposition {
  Net net;
  std::vector<SetFamily> layers;
  double R = 0.0;
  double D = 0.0;

  std::size_t m() const { return layers.size(); }
};

struct Witness {
  std::string condition;
  /// Layer of the violation; empty when the condition spans all layers.
  std::optional<std::size_t> layer;
  /// The point the violation is about (a net member for padding checks).
  Index subject = 0;
  /// Indices of the sets involved within `layer`.
  std::vector<std::size_t> sets;
  /// Points exhibiting the violation.
  std::vector<Index> points;

  auto operator<=>(const Witness&) const = default;
};

struct ConditionVerdict {
  std::string condition;
  bool passed = true;
};

struct VerificationReport {
  bool passed = true;
  std::vector<ConditionVerdict> conditions;
  /// Sorted canonically, so reports do not depend on thread scheduling.
  std::vector<Witness> witnesses;
};

struct VerifyOptions {
  /// Also require every layer to be disjoint on the whole space, not only on
  /// the net. Not part of the padded-decomposition definition.
  bool strict = false;
  unsigned threads = 1;
};

/// Checks, for every layer and net member:
///   "partition": each net member lies in exactly one set of the layer;
///   "diameter": every set has diameter <= D;
///   "padding": every net member x has a layer with a set containing B_R(x).
/// Exhaustive; throws PreconditionError when the space exceeds kMaxVerifyPoints.
VerificationReport verify_padded(std::span<const SetFamily> layers, const Net& net, double R,
                                 double D, const VerifyOptions& options = {});
VerificationReport verify_padded(const PaddedDecomposition& pd, const VerifyOptions& options = {});

/// Checks "disjoint" (distinct sets of a layer at distance > r_disjoint),
/// "diameter" (<= D_bound) and "coverage" (every point in some set).
VerificationReport verify_cover(const Cover& cover);

/// Cluster point sets of a carving layer, in cluster-id order.
SetFamily to_set_family(const PartitionLayer& layer);

/// Builds the padded decomposition from a (2R + r, D)-cover, r = net.eps():
/// each set A becomes B_R(A) and every net member not reached by the layer
/// gets its own ball B_r(x). Result parameters are (R, 2R + 2r + D).
/// Requires an (r, r)-net and a cover that verifies with r_disjoint >= 2R + r.
PaddedDecomposition padded_from_cover(const Cover& cover, const Net& net, double R);

/// Shrinks each set A of an (R + 2r, D)-padded decomposition, r = pd.net.eps(),
/// to {x in A : dist(x, A^c) >= R + r}, dropping sets that become empty.
/// Result is an (R, D)-cover. Requires pd to verify at pd.R >= R + 2r.
Cover cover_from_padded(const PaddedDecomposition& pd, double R);

/// Random cover for tests and experiments: layer by layer, visits uncovered
/// points in a shuffled order and adds B_a(p) minus every point within
/// distance <= rho of a set already in the layer. Distinct sets of a layer are
/// at distance > rho, every set has diameter < 2a, and layers are added until
/// the space is covered.
Cover greedy_cover(const FiniteMetricSpace& space, double rho, double a, std::uint64_t seed);

}  // namespace padlab
