#include "tprobe/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "tprobe/analytics.hpp"
#include "tprobe/dp_optimal.hpp"
#include "tprobe/multi_test.hpp"
#include "tprobe/policies.hpp"
#include "tprobe/sim.hpp"
#include "tprobe/svg.hpp"

namespace tprobe::cli {

using nlohmann::json;

namespace {

std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> params;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value in distribution spec, got '" + item + "'");
    params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return params;
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw UsageError("parameter " + key + " is not a number: '" + text + "'");
  return v;
}

long long to_count(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 9e15) throw UsageError("parameter " + key + " must be an integer");
  return static_cast<long long>(v);
}

class Params {
 public:
  Params(std::string name, std::map<std::string, std::string> values) : name_(std::move(name)), values_(std::move(values)) {}

  double real(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) throw UsageError(name_ + " needs parameter " + key);
    used_.push_back(key);
    return to_double(key, it->second);
  }

  long long count(const std::string& key, std::optional<long long> fallback) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      if (!fallback) throw UsageError(name_ + " needs parameter " + key + " (or --n)");
      return *fallback;
    }
    used_.push_back(key);
    return to_count(key, it->second);
  }

  void finish() const {
    for (const auto& [key, value] : values_)
      if (std::find(used_.begin(), used_.end(), key) == used_.end())
        throw UsageError("unknown parameter '" + key + "' for " + name_);
  }

 private:
  std::string name_;
  std::map<std::string, std::string> values_;
  std::vector<std::string> used_;
};

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text.front() == '-') throw UsageError("invalid seed '" + text + "'");
  return v;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error("cannot open " + path + " for writing");
  file << content;
  if (!file) throw Error("failed writing " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_row(std::initializer_list<double> values) {
  std::ostringstream os;
  os << std::setprecision(12);
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  os << '\n';
  return os.str();
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json pieces_json(const MinRatio& mr) {
  json pieces = json::array();
  for (const PieceMin& p : mr.pieces)
    pieces.push_back({{"piece", p.piece},
                      {"lo", p.lo},
                      {"hi", finite_or_null(p.hi)},
                      {"value", p.value},
                      {"argmin", finite_or_null(p.argmin)}});
  return pieces;
}

// Curve data: columns alpha,ratio,algo_ccdf,max_ccdf,piece.
struct CurveData {
  std::vector<double> alpha;
  std::vector<double> ratio;
  std::vector<double> ccdf;
  std::vector<double> gm;
  std::vector<std::size_t> piece;
};

CurveData sample_curve(const RatioCurve& curve, double alpha_hi, std::size_t points) {
  std::vector<double> grid;
  grid.reserve(points + 2 * curve.piece_count());
  for (std::size_t i = 0; i < points; ++i)
    grid.push_back(alpha_hi * static_cast<double>(i) / static_cast<double>(points - 1));
  for (double a : curve.policy().alphas())
    if (a <= alpha_hi) grid.push_back(a);
  for (const PieceMin& p : min_ratio(curve.policy(), curve.horizon()).pieces)
    if (std::isfinite(p.argmin) && p.argmin <= alpha_hi) grid.push_back(p.argmin);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  CurveData d;
  for (double a : grid) {
    d.alpha.push_back(a);
    d.ratio.push_back(curve(a));
    d.ccdf.push_back(a > 0.0 ? curve.ccdf(a) : 0.0);
    d.gm.push_back(curve.max_ccdf(a));
    d.piece.push_back(curve.piece(a));
  }
  return d;
}

std::string curve_csv(const CurveData& d) {
  std::string s = "alpha,ratio,algo_ccdf,max_ccdf,piece\n";
  for (std::size_t i = 0; i < d.alpha.size(); ++i) {
    std::ostringstream os;
    os << std::setprecision(12) << d.alpha[i] << ',' << d.ratio[i] << ',' << d.ccdf[i] << ',' << d.gm[i] << ','
       << d.piece[i] << '\n';
    s += os.str();
  }
  return s;
}

std::string curve_svg(const CurveData& d, const std::string& title) {
  std::map<std::size_t, Series> by_piece;
  for (std::size_t i = 0; i < d.alpha.size(); ++i) {
    Series& s = by_piece[d.piece[i]];
    s.label = "c_" + std::to_string(d.piece[i]);
    s.x.push_back(d.alpha[i]);
    s.y.push_back(d.ratio[i]);
  }
  std::vector<Series> series;
  for (auto it = by_piece.rbegin(); it != by_piece.rend(); ++it) series.push_back(std::move(it->second));
  return line_chart(series, {title, "alpha", "c(alpha)"});
}

struct SweepData {
  std::vector<double> n;
  std::vector<double> ratio;
  std::vector<double> value;
  std::vector<double> expected_max;
};

SweepData dp_sweep(const std::string& dist_spec, long long n_min, long long n_max, long long step) {
  if (n_min < 1 || n_max < n_min || step < 1) throw UsageError("need 1 <= n-min <= n-max and step >= 1");
  SweepData d;
  for (long long n = n_min; n <= n_max; n += step) {
    const Distribution dist = parse_distribution(dist_spec, n);
    const auto* disc = std::get_if<DiscreteDistribution>(&dist);
    if (!disc) throw UsageError("dp-sweep needs a discrete distribution");
    const double v = solve(*disc, n).value();
    const double em = disc->expected_max(n);
    d.n.push_back(static_cast<double>(n));
    d.value.push_back(v);
    d.expected_max.push_back(em);
    d.ratio.push_back(v / em);
  }
  return d;
}

std::string sweep_csv(const SweepData& d) {
  std::string s = "n,ratio,value,expected_max\n";
  for (std::size_t i = 0; i < d.n.size(); ++i) s += format_row({d.n[i], d.ratio[i], d.value[i], d.expected_max[i]});
  return s;
}

std::string sweep_svg(const SweepData& d, const std::string& title) {
  return line_chart({{"optimal / E[max]", d.n, d.ratio}}, {title, "n", "ratio"});
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw UsageError("unsupported --format '" + format + "'");
}

QuantilePolicy policy_from_flags(const std::vector<double>& alphas) {
  if (alphas.empty()) throw UsageError("--alphas is required");
  try {
    return QuantilePolicy(alphas);
  } catch (const BadParameter& e) {
    throw UsageError(std::string("--alphas: ") + e.what());
  }
}

struct MultiTestSummary {
  double mean_ratio = 0.0;
  double p_max_hit = 0.0;
  double mean_budget_used = 0.0;
  std::uint64_t max_budget_used = 0;
  std::uint64_t aborted_runs = 0;
};

MultiTestSummary multitest_runs(const ContinuousDistribution& dist, long long n, std::uint64_t reps,
                                std::uint64_t seed, unsigned workers) {
  struct Row {
    double chosen;
    double max;
    bool hit;
    std::uint64_t used;
    bool aborted;
  };
  std::vector<Row> rows(reps);
  const Rng master(seed);
  auto work = [&](unsigned w, unsigned stride) {
    for (std::uint64_t r = w; r < reps; r += stride) {
      Rng rng = master.split(r);
      const MultiTestResult res = run_multi_test(dist, n, rng);
      rows[r] = {res.chosen_value, res.max_value, res.chosen == res.argmax, res.budget.used(), res.aborted};
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }
  MultiTestSummary s;
  double sum_chosen = 0.0, sum_max = 0.0, hits = 0.0, used = 0.0;
  for (const Row& row : rows) {
    sum_chosen += row.chosen;
    sum_max += row.max;
    hits += row.hit ? 1.0 : 0.0;
    used += static_cast<double>(row.used);
    s.max_budget_used = std::max(s.max_budget_used, row.used);
    s.aborted_runs += row.aborted ? 1 : 0;
  }
  const auto count = static_cast<double>(reps);
  s.mean_ratio = sum_max > 0.0 ? sum_chosen / sum_max : 0.0;
  s.p_max_hit = hits / count;
  s.mean_budget_used = used / count;
  return s;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  emit(path.string(), content, std::cout);
}

}  // namespace

std::uint64_t default_seed() {
  const char* env = std::getenv("THRESHOLD_PROBE_SEED");
  if (env == nullptr || *env == '\0') return 1;
  return parse_seed(env);
}

Distribution parse_distribution(const std::string& spec, std::optional<long long> default_n) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (name == "file") {
    if (rest.empty()) throw UsageError("file: needs a path");
    std::ifstream in(rest);
    if (!in) throw UsageError("cannot read " + rest);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw UsageError("invalid JSON in " + rest + ": " + e.what());
    }
    return discrete_from_json(j);
  }
  if (name == "smooth") {
    const Distribution inner = parse_distribution(rest, default_n);
    const auto* disc = std::get_if<DiscreteDistribution>(&inner);
    if (!disc) throw UsageError("smooth: needs a discrete distribution");
    return disc->smoothed();
  }

  Params p(name, parse_params(rest));
  Distribution d = [&]() -> Distribution {
    if (name == "golden_nugget") {
      const double alpha = p.real("alpha");
      return golden_nugget(alpha, p.count("n", default_n));
    }
    if (name == "counterexample3") return counterexample3(p.count("n", default_n));
    if (name == "f_a") {
      const long long n = p.count("n", default_n);
      return f_a(n, p.real("eps"));
    }
    if (name == "f_b") return f_b(p.count("n", default_n));
    if (name == "uniform01") return uniform01();
    throw UsageError("unknown distribution '" + name + "'");
  }();
  p.finish();
  return d;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"tprobe"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Threshold testing: quantile policies, optimal testing DP, multi-test and Monte Carlo"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string seed_text;

  // optimize
  auto* opt = app.add_subcommand("optimize", "maximin search for k quantile parameters (n -> infinity)");
  std::size_t opt_k = 2;
  std::size_t opt_starts = 20;
  opt->add_option("--k", opt_k, "number of thresholds (1..5)")->check(CLI::Range(1, 5));
  opt->add_option("--starts", opt_starts, "random restarts")->check(CLI::PositiveNumber);
  opt->add_option("--seed", seed_text, "seed (default THRESHOLD_PROBE_SEED or 1)");

  // curve
  auto* crv = app.add_subcommand("curve", "ratio curve c(alpha) of a quantile policy");
  std::vector<double> alphas;
  std::string mode = "limit";
  long long n = 0;
  std::size_t points = 2001;
  double alpha_hi = 0.0;
  std::string out_path;
  std::string format;
  crv->add_option("--alphas", alphas, "policy parameters, decreasing")->delimiter(',')->required();
  crv->add_option("--mode", mode, "limit | finite")->check(CLI::IsMember({"limit", "finite"}));
  crv->add_option("--n", n, "boxes (finite mode)");
  crv->add_option("--points", points, "grid points")->check(CLI::Range(2, 10000000));
  crv->add_option("--alpha-max", alpha_hi, "right end of the grid");
  crv->add_option("--out", out_path, "output file (default stdout)");
  crv->add_option("--format", format, "csv | svg");

  // dp
  auto* dpc = app.add_subcommand("dp", "optimal single-test policy for a discrete distribution");
  std::string dist_spec;
  bool show_table = false;
  dpc->add_option("--dist", dist_spec, "distribution spec")->required();
  dpc->add_option("--n", n, "boxes")->required();
  dpc->add_flag("--table", show_table, "include the full decision table");
  dpc->add_option("--out", out_path, "output file (default stdout)");

  // dp-sweep
  auto* swp = app.add_subcommand("dp-sweep", "optimal ratio over a range of n");
  long long n_min = 3;
  long long n_max = 200;
  long long step = 1;
  std::string sweep_dist = "counterexample3";
  swp->add_option("--dist", sweep_dist, "distribution spec; a missing n follows the sweep");
  swp->add_option("--n-min", n_min, "first n");
  swp->add_option("--n-max", n_max, "last n");
  swp->add_option("--step", step, "increment");
  swp->add_option("--out", out_path, "output file (default stdout)");
  swp->add_option("--format", format, "csv | svg");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of a policy");
  std::string policy_name = "quantile";
  std::uint64_t reps = 10000;
  unsigned workers = 1;
  std::string samples_out;
  sim->add_option("--policy", policy_name, "quantile | gambler | dp")
      ->check(CLI::IsMember({"quantile", "gambler", "dp"}));
  sim->add_option("--alphas", alphas, "quantile policy parameters")->delimiter(',');
  sim->add_option("--dist", dist_spec, "distribution spec")->required();
  sim->add_option("--n", n, "boxes")->required();
  sim->add_option("--reps", reps, "replicates")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed_text, "seed (default THRESHOLD_PROBE_SEED or 1)");
  sim->add_option("--workers", workers, "threads")->check(CLI::Range(1, 256));
  sim->add_option("--samples-out", samples_out, "per-replicate CSV (replicate,value,max)");
  sim->add_option("--out", out_path, "output file (default stdout)");

  // multitest
  auto* mtc = app.add_subcommand("multitest", "multi-test algorithm with a budget of n tests");
  std::string mt_dist = "uniform01";
  std::uint64_t mt_reps = 1000;
  mtc->add_option("--dist", mt_dist, "continuous distribution spec");
  mtc->add_option("--n", n, "boxes")->required();
  mtc->add_option("--reps", mt_reps, "runs")->check(CLI::PositiveNumber);
  mtc->add_option("--seed", seed_text, "seed (default THRESHOLD_PROBE_SEED or 1)");
  mtc->add_option("--workers", workers, "threads")->check(CLI::Range(1, 256));
  mtc->add_option("--out", out_path, "output file (default stdout)");

  // figures
  auto* fig = app.add_subcommand("figures", "write the ratio curves and the n-sweep as CSV and SVG");
  std::string out_dir = "figures";
  long long fig_n_max = 1000;
  fig->add_option("--out-dir", out_dir, "output directory");
  fig->add_option("--n-max", fig_n_max, "last n of the sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    seed = seed_text.empty() ? default_seed() : parse_seed(seed_text);

    if (*opt) {
      OptimizeOptions o;
      o.starts = opt_starts;
      o.seed = seed;
      const OptimizeResult r = optimize_alphas(opt_k, o);
      json j{{"config", {{"command", "optimize"}, {"k", opt_k}, {"starts", opt_starts}, {"seed", seed}}},
             {"alphas", std::vector<double>(r.policy.alphas().begin(), r.policy.alphas().end())},
             {"c_star", r.ratio.c_star},
             {"alpha_star", finite_or_null(r.ratio.alpha_star)},
             {"pieces", pieces_json(r.ratio)},
             {"start_values", r.start_values}};
      out << dump(j);
      return 0;
    }

    if (*crv) {
      if (format.empty()) format = "csv";
      check_format(format, {"csv", "svg"});
      const QuantilePolicy policy = policy_from_flags(alphas);
      if (mode == "finite" && n < 1) throw UsageError("--mode finite needs --n");
      const Horizon h = mode == "finite" ? Horizon::finite(n) : Horizon::limit();
      if (mode == "finite") policy.require_fits(n);
      if (alpha_hi <= 0.0) alpha_hi = std::max(3.0, 1.5 * policy.alpha(0));
      if (mode == "finite") alpha_hi = std::min(alpha_hi, static_cast<double>(n));
      const RatioCurve curve(policy, h);
      const CurveData d = sample_curve(curve, alpha_hi, points);
      json cfg{{"command", "curve"}, {"alphas", alphas}, {"mode", mode}, {"points", points},
               {"alpha_max", alpha_hi}, {"format", format}, {"seed", seed}};
      if (mode == "finite") cfg["n"] = n;
      err << "# config " << cfg.dump() << "\n";
      emit(out_path, format == "csv" ? curve_csv(d) : curve_svg(d, "c(alpha), " + mode), out);
      return 0;
    }

    if (*dpc) {
      const Distribution dist = parse_distribution(dist_spec, n);
      const auto* disc = std::get_if<DiscreteDistribution>(&dist);
      if (!disc) throw UsageError("dp needs a discrete distribution");
      const DPTable table = solve(*disc, n);
      const double em = disc->expected_max(n);
      json j{{"config", {{"command", "dp"}, {"dist", dist_spec}, {"n", n}, {"table", show_table}, {"seed", seed}}},
             {"distribution", *disc},
             {"value", table.value()},
             {"expected_max", em},
             {"ratio", table.value() / em}};
      if (show_table) j["table"] = table;
      emit(out_path, dump(j), out);
      return 0;
    }

    if (*swp) {
      if (format.empty()) format = "csv";
      check_format(format, {"csv", "svg"});
      const SweepData d = dp_sweep(sweep_dist, n_min, n_max, step);
      json cfg{{"command", "dp-sweep"}, {"dist", sweep_dist}, {"n_min", n_min},
               {"n_max", n_max},        {"step", step},       {"format", format}, {"seed", seed}};
      err << "# config " << cfg.dump() << "\n";
      emit(out_path, format == "csv" ? sweep_csv(d) : sweep_svg(d, "optimal ratio, " + sweep_dist), out);
      return 0;
    }

    if (*sim) {
      const Distribution dist = parse_distribution(dist_spec, n);
      const auto* disc = std::get_if<DiscreteDistribution>(&dist);
      const auto* cont = std::get_if<ContinuousDistribution>(&dist);
      if (n < 1) throw UsageError("--n must be positive");
      json cfg{{"command", "simulate"}, {"policy", policy_name}, {"dist", dist_spec}, {"n", n},
               {"reps", reps},          {"seed", seed},          {"workers", workers}};
      Runner runner;
      std::optional<double> exact_value;
      std::optional<QuantilePolicy> qp;
      std::optional<DPTable> table;
      std::vector<double> thresholds;
      if (policy_name == "quantile") {
        qp.emplace(policy_from_flags(alphas));
        qp->require_fits(n);
        cfg["alphas"] = alphas;
        if (disc) {
          exact_value = exact_policy_value(*qp, *disc, n);
          runner = [&](Rng& rng) {
            const PlayResult r = play_discrete(*qp, *disc, n, rng, false);
            return Draw{r.chosen_value, r.max_value};
          };
        } else {
          runner = [&](Rng& rng) {
            const PlayResult r = play_continuous(*qp, *cont, n, rng, false);
            return Draw{r.chosen_value, r.max_value};
          };
        }
      } else {
        if (!disc) throw UsageError("--policy " + policy_name + " needs a discrete distribution");
        if (!alphas.empty()) throw UsageError("--alphas only applies to --policy quantile");
        if (policy_name == "gambler") {
          thresholds = gambler_thresholds(*disc, n);
          exact_value = gambler_value(*disc, n);
          runner = [&](Rng& rng) {
            const PlayResult r = play_nonadaptive(thresholds, dist, rng, false);
            return Draw{r.chosen_value, r.max_value};
          };
        } else {
          table.emplace(solve(*disc, n));
          exact_value = table->value();
          runner = [&](Rng& rng) {
            const PlayResult r = simulate_dp_policy(*table, rng, false);
            return Draw{r.chosen_value, r.max_value};
          };
        }
      }
      SimConfig sc{reps, seed, workers, !samples_out.empty()};
      const SimResult res = estimate(runner, dist, n, sc);
      json j{{"config", cfg}, {"result", res}};
      if (exact_value) {
        j["exact_value"] = *exact_value;
        if (res.exact_max) j["exact_ratio"] = *exact_value / res.expected_max;
      }
      if (!samples_out.empty()) {
        std::ostringstream csv;
        csv << std::setprecision(17) << "replicate,value,max\n";
        for (std::size_t r = 0; r < res.samples.size(); ++r)
          csv << r << ',' << res.samples[r].value << ',' << res.samples[r].max << '\n';
        emit(samples_out, csv.str(), out);
      }
      emit(out_path, dump(j), out);
      return 0;
    }

    if (*mtc) {
      const Distribution dist = parse_distribution(mt_dist, n);
      const auto* cont = std::get_if<ContinuousDistribution>(&dist);
      if (!cont) throw UsageError("multitest needs a continuous distribution (try smooth:<spec>)");
      const MultiTestSummary s = multitest_runs(*cont, n, mt_reps, seed, workers);
      json j{{"config",
              {{"command", "multitest"}, {"dist", mt_dist}, {"n", n}, {"reps", mt_reps}, {"seed", seed}, {"workers", workers}}},
             {"mean_ratio", s.mean_ratio},
             {"p_max_hit", s.p_max_hit},
             {"mean_budget_used", s.mean_budget_used},
             {"max_budget_used", s.max_budget_used},
             {"budget", n},
             {"aborted_runs", s.aborted_runs}};
      emit(out_path, dump(j), out);
      return 0;
    }

    if (*fig) {
      namespace fs = std::filesystem;
      fs::create_directories(out_dir);
      const fs::path dir(out_dir);
      for (const auto& [k, stem] : {std::pair<std::size_t, const char*>{2, "fig1_k2_limit"}, {3, "fig3_k3_limit"}}) {
        const RatioCurve curve(reference_policy(k), Horizon::limit());
        const CurveData d = sample_curve(curve, 3.0, 2001);
        write_text_file(dir / (std::string(stem) + ".csv"), curve_csv(d));
        write_text_file(dir / (std::string(stem) + ".svg"),
                        curve_svg(d, "c(alpha), k = " + std::to_string(k) + ", n -> infinity"));
      }
      const SweepData d = dp_sweep("counterexample3", 3, fig_n_max, 1);
      write_text_file(dir / "fig2_counterexample3.csv", sweep_csv(d));
      write_text_file(dir / "fig2_counterexample3.svg", sweep_svg(d, "optimal ratio, counterexample3(n)"));
      json j{{"config", {{"command", "figures"}, {"out_dir", out_dir}, {"n_max", fig_n_max}, {"seed", seed}}},
             {"files",
              {"fig1_k2_limit.csv", "fig1_k2_limit.svg", "fig3_k3_limit.csv", "fig3_k3_limit.svg",
               "fig2_counterexample3.csv", "fig2_counterexample3.svg"}}};
      out << dump(j);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace tprobe::cli
