#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <padlab/estimators.hpp>
#include <padlab/fixtures.hpp>
#include <padlab/serialize.hpp>

#include "config.hpp"

namespace padlab::lab {

std::string csv_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double texp_cut_bound(double N, double D, double eps) {
  return 4.0 * N * N * N * std::pow(D + 3.0, std::log2(N)) * std::exp(-(D - 1.5) * eps) +
         12.0 * eps;
}

bool texp_cut_regime(double r, double D, double eps) {
  return eps > 0.0 && eps < 1.0 && D > 1.0 / eps + 0.5 && r > 1.0;
}

double tgeo_cut_bound(double r, double p) { return 20.0 * r * p; }

bool tgeo_cut_regime(double r, double b, double p) {
  return r >= 9.0 && b >= 0.0 && p <= 1.0 / (4.0 * b + 5.0);
}

namespace {

// Rng stream reserved for choosing probe centers (trials use streams 0, 1, ...).
constexpr std::uint64_t kCenterStream = ~std::uint64_t{0};

struct Globals {
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  std::string fixture;
  unsigned threads = 0;
  CLI::Option* seed_opt = nullptr;
};

unsigned effective_threads(unsigned requested) {
  if (const char* env = std::getenv("LAB_THREADS"); env && *env) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (*end != '\0') throw PreconditionError("LAB_THREADS must be a nonnegative integer");
    return static_cast<unsigned>(value);
  }
  return requested;
}

ExperimentConfig effective_config(const Globals& g) {
  ExperimentConfig config = g.config.empty() ? ExperimentConfig{} : load_config(g.config);
  if (!g.fixture.empty()) config.fixture = g.fixture;
  if (g.seed_opt->count() > 0) config.seed = g.seed;
  if (!g.out.empty()) config.output = g.out;
  return config;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw PreconditionError("cannot write '" + path + "'");
  file << text;
  if (!file) throw PreconditionError("failed writing '" + path + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <typename T>
T param(const json& params, const char* key, T fallback) {
  if (!params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const json::exception&) {
    throw PreconditionError(std::string("parameter '") + key + "' has the wrong type");
  }
}

const std::string& need_fixture(const ExperimentConfig& config) {
  if (config.fixture.empty()) throw PreconditionError("no fixture given (--fixture or config)");
  return config.fixture;
}

std::vector<Index> sample_centers(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<Index> all(n);
  for (Index i = 0; i < n; ++i) all[i] = i;
  if (count >= n) return all;
  Rng rng(seed, kCenterStream);
  shuffle(all, rng);
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

// Radii 1, 2, 4, ... up to min(cap, limit).
std::vector<double> dyadic_radii(double limit, double cap) {
  std::vector<double> radii;
  for (double r = 1.0; r <= std::min(limit, cap); r *= 2.0) radii.push_back(r);
  if (radii.empty()) radii.push_back(1.0);
  return radii;
}

// ---- gen -------------------------------------------------------------------

int cmd_gen(const Globals& g, std::ostream& out) {
  const ExperimentConfig config = effective_config(g);
  const std::string& spec = need_fixture(config);
  if (config.output.empty()) throw PreconditionError("gen needs --out");

  const FiniteMetricSpace space = make_fixture(spec);
  std::ostringstream body;
  const std::string reload = write_fixture(spec, body, config.output);
  write_text(config.output, body.str());

  const std::size_t n = space.size();
  json sidecar = {{"fixture", spec}, {"reload", reload}, {"points", n}};
  std::optional<double> diameter;
  if (n <= kMaxVerifyPoints) diameter = space.diameter();
  sidecar["diameter"] = diameter ? json(*diameter) : json(nullptr);

  if (n > 0) {
    const auto radii = dyadic_radii(diameter ? *diameter / 2.0 : 64.0, 64.0);
    const auto centers = n <= 2000 ? std::vector<Index>{} : sample_centers(n, 64, config.seed);
    std::optional<DoublingEstimate> estimate;
    std::string method = "greedy";
    if (n <= 300) {
      estimate = doubling_constant_exact(space, radii, centers);
      if (estimate) method = "exact";
    }
    if (!estimate) estimate = doubling_constant_estimate(space, radii, centers, g.threads);
    sidecar["doubling"] = {{"value", estimate->value},
                           {"method", method},
                           {"lower_estimate", true},
                           {"center", estimate->center},
                           {"radius", estimate->radius},
                           {"radii", radii},
                           {"centers", centers.empty() ? json("all") : json(centers)}};
    if (n <= kMaxVerifyPoints) {
      const auto growth_radii = dyadic_radii(diameter ? *diameter : 64.0, 64.0);
      const auto gamma = growth_table(space, growth_radii, 4, config.seed, g.threads);
      json rows = json::array();
      for (std::size_t k = 0; k < gamma.size(); ++k)
        rows.push_back({{"r", growth_radii[k]}, {"gamma_lower", gamma[k]}});
      sidecar["growth"] = rows;
    } else {
      sidecar["growth"] = nullptr;
    }
  }
  write_text(config.output + ".json", dump(sidecar));
  out << "wrote " << config.output << " (" << n << " points) and " << config.output
      << ".json\n";
  return kPass;
}

// ---- carve -----------------------------------------------------------------

int cmd_carve(const Globals& g, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = effective_config(g);
  const std::string& spec = need_fixture(config);
  if (!config.schedule) throw PreconditionError("carve needs a schedule in the config");
  if (config.output.empty()) throw PreconditionError("carve needs an output directory (--out)");
  const Schedule schedule = schedule_from_json(*config.schedule);
  const bool texp = std::holds_alternative<TexpSchedule>(schedule);
  const double net_scale =
      param(config.params, "net_scale", texp ? std::get<TexpSchedule>(schedule).r : 1.0);
  const auto max_rounds = param<std::size_t>(config.params, "max_rounds", 0);

  const FiniteMetricSpace space = make_fixture(spec);
  const Net net = build_net(space, net_scale, net_scale);
  const CspInstance csp = make_csp(net, schedule);
  const Certificate cert = certify_decomposition(csp, config.seed, max_rounds, g.threads);

  std::filesystem::create_directories(config.output);
  const std::filesystem::path dir(config.output);
  write_text((dir / "decomposition.json").string(), dump(decomposition_to_json(cert.decomposition, spec)));
  json verification = report_to_json(cert.report);
  verification["certified"] = cert.passed;
  write_text((dir / "verification.json").string(), dump(verification));

  json run = run_to_json(cert.run, config.seed);
  run["fixture"] = spec;
  run["schedule"] = schedule_to_json(schedule);
  run["net_scale"] = net_scale;
  run["net_size"] = net.size();
  run["probe_radius"] = csp.probe_radius;
  run["domain_radius"] = csp.domain_radius;
  if (texp)
    run["probe_note"] = "probe radius 3r: constraints keep B_{3r}(u) uncut in some layer";
  write_text((dir / "run.json").string(), dump(run));

  const auto layers = carve_layers(csp, cert.run);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    std::ostringstream csv;
    layers[i].write_csv(csv);
    write_text((dir / ("layer_" + std::to_string(i) + ".csv")).string(), csv.str());
  }

  out << (cert.passed ? "PASS" : "FAIL") << ": " << net.size() << " constraints, "
      << cert.run.rounds << " rounds, (R, D) = (" << csv_real(cert.decomposition.R) << ", "
      << csv_real(cert.decomposition.D) << ")\n";
  if (!cert.passed)
    err << "verification failed; witnesses in " << (dir / "verification.json").string() << "\n";
  return cert.passed ? kPass : kVerifiedFailure;
}

// ---- cutprob ---------------------------------------------------------------

int cmd_cutprob(const Globals& g, std::ostream& out) {
  const ExperimentConfig config = effective_config(g);
  const std::string& spec = need_fixture(config);
  if (!config.params.contains("cases") || !config.params.at("cases").is_array())
    throw PreconditionError("cutprob needs params.cases as an explicit list");
  require(config.trials >= 1, "cutprob needs trials >= 1");
  const FiniteMetricSpace space = make_fixture(spec);
  const auto centers =
      sample_centers(space.size(), param<std::size_t>(config.params, "centers", 100), config.seed);

  std::ostringstream csv;
  csv << "experiment,fixture,kind,N,D,eps,b,p,M,l,r,probe_radius,trials,centers,measured,"
         "std_error,bound,in_regime,pass\n";
  bool all_pass = true;
  std::size_t index = 0;
  for (const auto& c : config.params.at("cases")) {
    const std::string id = param<std::string>(c, "id", "case" + std::to_string(index++));
    const std::string kind = param<std::string>(c, "kind", "");
    std::string N_col, D_col, eps_col, b_col, p_col;
    double r = 0.0, probe = 0.0, net_scale = 1.0, bound = 0.0;
    bool regime = false;
    std::optional<RadiusLaw> law;
    if (kind == "texp") {
      const TexpSchedule s(param<double>(c, "N", 0.0), param<double>(c, "r", 0.0),
                           param<double>(c, "eps", 0.0), param<double>(c, "D", 0.0));
      law = s.law();
      r = s.r;
      net_scale = s.r;
      probe = param<double>(c, "probe_radius", s.probe_radius());
      bound = texp_cut_bound(s.N, s.D, s.eps);
      regime = texp_cut_regime(s.r, s.D, s.eps);
      N_col = csv_real(s.N);
      D_col = csv_real(s.D);
      eps_col = csv_real(s.eps);
      b_col = csv_real(std::log2(s.N));
    } else if (kind == "tgeo") {
      const double b = param<double>(c, "b", 0.0);
      const double p = param<double>(c, "p", 0.0);
      const TgeoParams tg(p, param<std::int64_t>(c, "M", 0));
      law = tg;
      r = param<double>(c, "r", 0.0);
      require(r > 0.0, "tgeo case needs r > 0");
      probe = param<double>(c, "probe_radius", r);
      net_scale = param<double>(c, "net_scale", 1.0);
      bound = tgeo_cut_bound(r, p);
      regime = tgeo_cut_regime(r, b, p);
      b_col = csv_real(b);
      p_col = csv_real(p);
    } else {
      throw PreconditionError("case '" + id + "' has unknown kind '" + kind + "'");
    }
    const Net net = build_net(space, net_scale, net_scale);
    const CutEstimate est =
        cut_probability_mc(space, net, *law, probe, centers, config.trials, config.seed, g.threads);
    const bool pass = est.frequency <= bound + 3.0 * est.std_error;
    if (regime) all_pass = all_pass && pass;
    csv << id << ',' << spec << ',' << kind << ',' << N_col << ',' << D_col << ',' << eps_col
        << ',' << b_col << ',' << p_col << ',' << csv_real(law_upper(*law)) << ','
        << csv_real(law_lower(*law)) << ',' << csv_real(r) << ',' << csv_real(probe) << ','
        << config.trials << ',' << centers.size() << ',' << csv_real(est.frequency) << ','
        << csv_real(est.std_error) << ',' << csv_real(bound) << ','
        << (regime ? "true" : "false") << ',' << (regime ? (pass ? "true" : "false") : "")
        << '\n';
  }
  if (config.output.empty())
    out << csv.str();
  else
    write_text(config.output, csv.str());
  return all_pass ? kPass : kVerifiedFailure;
}

// ---- growth ----------------------------------------------------------------

int cmd_growth(const Globals& g, const std::vector<double>& radii, std::size_t trials,
               std::ostream& out) {
  const ExperimentConfig config = effective_config(g);
  const std::string& spec = need_fixture(config);
  require(!radii.empty(), "growth needs --radii");
  const FiniteMetricSpace space = make_fixture(spec);

  std::ostringstream csv;
  csv << "r,gamma_lower\n";
  std::vector<double> xs, ys;
  if (!space.empty()) {
    const auto gamma = growth_table(space, radii, trials, config.seed, g.threads);
    for (std::size_t k = 0; k < radii.size(); ++k) {
      csv << csv_real(radii[k]) << ',' << gamma[k] << '\n';
      xs.push_back(radii[k] + 1.0);
      ys.push_back(static_cast<double>(gamma[k]));
    }
  }
  std::optional<double> slope;
  if (space.size() >= 2) slope = loglog_slope(xs, ys);
  const std::string slope_text = slope ? csv_real(*slope) : "undefined";

  if (config.output.empty()) {
    out << csv.str() << "# slope of log gamma vs log(r+1): " << slope_text << '\n';
  } else {
    write_text(config.output, csv.str());
    json summary = {{"fixture", spec}, {"radii", radii}, {"trials", trials},
                    {"slope", slope ? json(*slope) : json("undefined")}};
    write_text(config.output + ".json", dump(summary));
    out << "slope: " << slope_text << '\n';
  }
  return kPass;
}

// ---- convert ---------------------------------------------------------------

int report_failure(const std::string& what, const VerificationReport& report, std::ostream& err) {
  err << what << "\n" << dump(report_to_json(report));
  return kVerifiedFailure;
}

int cmd_convert(const Globals& g, const std::string& input, const std::string& direction,
                double R, double r, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = effective_config(g);
  std::ifstream in(input);
  if (!in) throw PreconditionError("cannot open '" + input + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw PreconditionError("'" + input + "' is not valid JSON: " + e.what());
  }
  std::string spec = config.fixture;
  if (spec.empty()) spec = param<std::string>(doc, "fixture", "");
  if (spec.empty()) throw PreconditionError("no fixture in input or on the command line");
  const FiniteMetricSpace space = make_fixture(spec);

  json result;
  if (direction == "to-padded") {
    const Cover cover = cover_from_json(doc, space);
    const Net net = build_net(space, r, r);
    if (cover.r_disjoint < 2.0 * R + r) {
      err << "input cover is " << csv_real(cover.r_disjoint) << "-disjoint; need 2R + r = "
          << csv_real(2.0 * R + r) << "\n";
      return kVerifiedFailure;
    }
    const auto input_report = verify_cover(cover);
    if (!input_report.passed) return report_failure("input cover does not verify", input_report, err);
    const PaddedDecomposition pd = padded_from_cover(cover, net, R);
    const auto output_report = verify_padded(pd, VerifyOptions{false, g.threads});
    if (!output_report.passed)
      return report_failure("output decomposition does not verify", output_report, err);
    result = decomposition_to_json(pd, spec);
  } else if (direction == "to-cover") {
    const PaddedDecomposition pd = decomposition_from_json(doc, space);
    const double rr = pd.net.eps();
    if (pd.R < R + 2.0 * rr) {
      err << "input decomposition has padding " << csv_real(pd.R) << "; need R + 2r = "
          << csv_real(R + 2.0 * rr) << "\n";
      return kVerifiedFailure;
    }
    const auto input_report = verify_padded(pd, VerifyOptions{false, g.threads});
    if (!input_report.passed)
      return report_failure("input decomposition does not verify", input_report, err);
    const Cover cover = cover_from_padded(pd, R);
    const auto output_report = verify_cover(cover);
    if (!output_report.passed)
      return report_failure("output cover does not verify", output_report, err);
    result = cover_to_json(cover, spec);
  } else {
    throw PreconditionError("--direction must be to-padded or to-cover");
  }
  if (config.output.empty())
    out << dump(result);
  else
    write_text(config.output, dump(result));
  return kPass;
}

// ---- lll-check -------------------------------------------------------------

int cmd_lll_check(const Globals& g, const std::string& inline_schedule, std::ostream& out) {
  const ExperimentConfig config = effective_config(g);
  json sj;
  if (!inline_schedule.empty()) {
    try {
      sj = json::parse(inline_schedule);
    } catch (const json::exception& e) {
      throw PreconditionError(std::string("--schedule is not valid JSON: ") + e.what());
    }
  } else if (config.schedule) {
    sj = *config.schedule;
  } else {
    throw PreconditionError("lll-check needs --schedule or a config with a schedule");
  }
  const Schedule schedule = schedule_from_json(sj);
  LllBudget budget;
  if (const auto* t = std::get_if<TexpSchedule>(&schedule)) {
    budget = texp_csp_bounds(*t);
  } else {
    const auto& s = std::get<TgeoRunSpec>(schedule);
    budget = tgeo_csp_bounds(s.b, s.r, s.m, s.p, static_cast<double>(s.M));
  }
  json report = {{"schedule", schedule_to_json(schedule)},
                 {"log_p_bound", budget.log_p_bound},
                 {"log_d_plus_one", budget.log_d_plus_one},
                 {"p_bound", budget.p_bound()},
                 {"d_bound", std::isfinite(budget.d_bound()) ? json(budget.d_bound()) : json(nullptr)},
                 {"log_margin", budget.margin()},
                 {"feasible", budget.feasible}};
  const std::string text = dump(report);
  if (config.output.empty())
    out << text;
  else
    write_text(config.output, text);
  return budget.feasible ? kPass : kVerifiedFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"padlab: padded decompositions of finite metric spaces", "padlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "Experiment config (JSON)");
  g.seed_opt = app.add_option("--seed", g.seed, "Seed for every random draw");
  app.add_option("--out", g.out, "Output path");
  app.add_option("--fixture", g.fixture, "Fixture spec, e.g. segment:1000 or grid:20x20:l1");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores; LAB_THREADS overrides)");

  auto* gen = app.add_subcommand("gen", "Write a fixture file and a sidecar of measured constants");
  auto* carve_cmd = app.add_subcommand("carve", "Build and verify a padded decomposition");
  auto* cutprob = app.add_subcommand("cutprob", "Monte Carlo cut probabilities against the bounds");
  auto* growth = app.add_subcommand("growth", "Metric growth table and log-log slope");
  std::vector<double> radii;
  std::size_t growth_trials = 4;
  growth->add_option("--radii", radii, "Radii r >= 1")->required();
  growth->add_option("--trials", growth_trials, "Random nets per radius");
  auto* convert = app.add_subcommand("convert", "Convert between covers and padded decompositions");
  std::string input, direction;
  double R = 0.0, net_r = 1.0;
  convert->add_option("--in", input, "Input cover or decomposition JSON")->required();
  convert->add_option("--direction", direction, "to-padded or to-cover")->required();
  convert->add_option("--R", R, "Target radius R")->required();
  convert->add_option("--r", net_r, "Net scale r for to-padded (default 1)");
  auto* lll = app.add_subcommand("lll-check", "Evaluate the LLL bounds of a schedule");
  std::string inline_schedule;
  lll->add_option("--schedule", inline_schedule, "Schedule JSON");

  std::vector<const char*> argv{"padlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  try {
    g.threads = effective_threads(g.threads);
    if (gen->parsed()) return cmd_gen(g, out);
    if (carve_cmd->parsed()) return cmd_carve(g, out, err);
    if (cutprob->parsed()) return cmd_cutprob(g, out);
    if (growth->parsed()) return cmd_growth(g, radii, growth_trials, out);
    if (convert->parsed()) return cmd_convert(g, input, direction, R, net_r, out, err);
    if (lll->parsed()) return cmd_lll_check(g, inline_schedule, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ConstructionError& e) {
    err << "construction failed: " << e.what() << "\n";
    return kVerifiedFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace padlab::lab
