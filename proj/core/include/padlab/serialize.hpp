#pragma once

#include <variant>

#include <nlohmann/json.hpp>

#include "padlab/decomposition.hpp"
#include "padlab/lll.hpp"

namespace padlab {

using nlohmann::json;

/// End-to-end truncated-geometric run parameters (law, layer count, probe r).
struct TgeoRunSpec {
  double b = 1.0;
  double p = 0.0;
  std::int64_t M = 2;
  std::size_t m = 1;
  double r = 1.0;

  TgeoParams law() const { return TgeoParams(p, M); }
};

using Schedule = std::variant<TexpSchedule, TgeoRunSpec>;

/// {"kind":"texp","N":2,"r":3,"eps":0.05,"D":20[,"m":2]} or
/// {"kind":"tgeo","b":1,"p":0.0025,"M":9585,"m":2,"r":9}.
json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const json& j);

/// Constraint set for a schedule on the given net.
CspInstance make_csp(const Net& net, const Schedule& schedule);

json report_to_json(const VerificationReport& report);

/// Layers as arrays of sorted point-id arrays, together with the net and the
/// (R, D) claim. `fixture` is the spec string the space was built from.
json decomposition_to_json(const PaddedDecomposition& pd, const std::string& fixture);
/// Rebuilds a decomposition on `space`; the net is taken as stored.
PaddedDecomposition decomposition_from_json(const json& j, const FiniteMetricSpace& space);

json cover_to_json(const Cover& cover, const std::string& fixture);
Cover cover_from_json(const json& j, const FiniteMetricSpace& space);

/// Seed, round count, per-round violated counts and the resampled centers.
json run_to_json(const MoserTardosResult& run, std::uint64_t seed);

}  // namespace padlab
