#include "padlab/serialize.hpp"

namespace padlab {
namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw PreconditionError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw PreconditionError(std::string("field '") + key + "' has the wrong type");
  }
}

json families_to_json(std::span<const SetFamily> layers) {
  json out = json::array();
  for (const auto& family : layers) {
    json layer = json::array();
    for (const auto& set : family) layer.push_back(set);
    out.push_back(std::move(layer));
  }
  return out;
}

std::vector<SetFamily> families_from_json(const json& j, std::size_t n) {
  if (!j.is_array()) throw PreconditionError("'layers' must be an array");
  std::vector<SetFamily> layers;
  for (const auto& layer : j) {
    SetFamily family;
    for (const auto& set : layer) {
      PointSet points = set.get<PointSet>();
      std::sort(points.begin(), points.end());
      points.erase(std::unique(points.begin(), points.end()), points.end());
      if (!points.empty() && points.back() >= n)
        throw PreconditionError("set refers to point " + std::to_string(points.back()) +
                                " outside the space");
      family.push_back(std::move(points));
    }
    layers.push_back(std::move(family));
  }
  return layers;
}

}  // namespace

json schedule_to_json(const Schedule& schedule) {
  if (const auto* t = std::get_if<TexpSchedule>(&schedule))
    return {{"kind", "texp"}, {"N", t->N}, {"r", t->r}, {"eps", t->eps}, {"D", t->D}, {"m", t->m}};
  const auto& g = std::get<TgeoRunSpec>(schedule);
  return {{"kind", "tgeo"}, {"b", g.b}, {"p", g.p}, {"M", g.M}, {"m", g.m}, {"r", g.r}};
}

Schedule schedule_from_json(const json& j) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "texp") {
    std::optional<std::size_t> m;
    if (j.contains("m")) m = field<std::size_t>(j, "m");
    return TexpSchedule(field<double>(j, "N"), field<double>(j, "r"), field<double>(j, "eps"),
                        field<double>(j, "D"), m);
  }
  if (kind == "tgeo") {
    TgeoRunSpec g{field<double>(j, "b"), field<double>(j, "p"), field<std::int64_t>(j, "M"),
                  field<std::size_t>(j, "m"), field<double>(j, "r")};
    (void)g.law();
    require(g.m >= 1, "tgeo schedule needs m >= 1");
    require(g.r > 0.0, "tgeo schedule needs r > 0");
    return g;
  }
  throw PreconditionError("unknown schedule kind '" + kind + "'");
}

CspInstance make_csp(const Net& net, const Schedule& schedule) {
  if (const auto* t = std::get_if<TexpSchedule>(&schedule)) return texp_csp(net, *t);
  const auto& g = std::get<TgeoRunSpec>(schedule);
  return tgeo_csp(net, g.law(), g.m, g.r);
}

json report_to_json(const VerificationReport& report) {
  json conditions = json::object();
  for (const auto& c : report.conditions) conditions[c.condition] = c.passed;
  json witnesses = json::array();
  for (const auto& w : report.witnesses) {
    witnesses.push_back({{"condition", w.condition},
                         {"layer", w.layer ? json(*w.layer) : json(nullptr)},
                         {"subject", w.subject},
                         {"sets", w.sets},
                         {"points", w.points}});
  }
  return {{"passed", report.passed}, {"conditions", conditions}, {"witnesses", witnesses}};
}

json decomposition_to_json(const PaddedDecomposition& pd, const std::string& fixture) {
  std::vector<Index> members(pd.net.members().begin(), pd.net.members().end());
  return {{"fixture", fixture},
          {"R", pd.R},
          {"D", pd.D},
          {"m", pd.m()},
          {"net", {{"eps", pd.net.eps()}, {"delta", pd.net.delta()}, {"members", members}}},
          {"layers", families_to_json(pd.layers)}};
}

PaddedDecomposition decomposition_from_json(const json& j, const FiniteMetricSpace& space) {
  const json& net = j.at("net");
  auto members = field<std::vector<Index>>(net, "members");
  std::sort(members.begin(), members.end());
  for (Index x : members)
    require(x < space.size(), "net member " + std::to_string(x) + " outside the space");
  PaddedDecomposition pd;
  pd.net = Net(space, std::move(members), field<double>(net, "eps"), field<double>(net, "delta"));
  pd.R = field<double>(j, "R");
  pd.D = field<double>(j, "D");
  pd.layers = families_from_json(j.at("layers"), space.size());
  return pd;
}

json cover_to_json(const Cover& cover, const std::string& fixture) {
  return {{"fixture", fixture},
          {"r", cover.r_disjoint},
          {"D", cover.D_bound},
          {"m", cover.layers.size()},
          {"layers", families_to_json(cover.layers)}};
}

Cover cover_from_json(const json& j, const FiniteMetricSpace& space) {
  Cover cover;
  cover.space = space;
  cover.r_disjoint = field<double>(j, "r");
  cover.D_bound = field<double>(j, "D");
  cover.layers = families_from_json(j.at("layers"), space.size());
  return cover;
}

json run_to_json(const MoserTardosResult& run, std::uint64_t seed) {
  return {{"seed", seed},
          {"success", run.success},
          {"rounds", run.rounds},
          {"max_rounds", run.max_rounds},
          {"initial_violations", run.initial_violations},
          {"violated_per_round", run.violated_per_round},
          {"resampled", run.resampled},
          {"residual", run.residual},
          {"num_colors", run.coloring.num_colors},
          {"color_order", run.coloring.order}};
}

}  // namespace padlab
