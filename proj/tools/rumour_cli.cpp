// Command-line front door: simulate ensembles, solve the limit equation,
// run the verification suites, sweep n. Data goes to stdout (jsonl or CSV);
// progress, seeds and summaries go to stderr. Exit codes: 0 success or
// all suites passing, 1 verification failure, 2 usage or I/O error.

#include "CLI11.hpp"
#include "json.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rumour/analysis.hpp"
#include "rumour/dp.hpp"
#include "rumour/ensemble.hpp"
#include "rumour/model.hpp"
#include "rumour/stats.hpp"
#include "rumour/walk.hpp"

namespace {

using nlohmann::ordered_json;
using namespace rumour;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
}

struct SeededFlag {
  std::uint64_t value = 0;
  bool provided = false;
};

std::uint64_t resolve_seed(const SeededFlag& flag) {
  const std::uint64_t seed = flag.provided ? flag.value : entropy_seed();
  std::cerr << "# seed " << seed << "\n";
  return seed;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t reps = 1;
  std::int64_t infectives = 1;
  SeededFlag seed;
  std::string engine = "geometric";
  std::string format = "jsonl";
  std::string trajectories_path;
};

// One line of simulate output. The fraction is always recomputed from the
// recorded integers.
struct RunRecord {
  std::string engine;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t replicate_index = 0;
  std::uint64_t seed = 0;
  std::int64_t terminal_time = 0;
  std::int64_t terminal_susceptibles = 0;

  double fraction() const {
    return static_cast<double>(terminal_susceptibles) / static_cast<double>(n);
  }
  std::string csv() const {
    std::ostringstream row;
    row << engine << ',' << n << ',' << k << ',' << replicate_index << ',' << seed << ','
        << terminal_time << ',' << terminal_susceptibles << ',' << format_double(fraction());
    return row.str();
  }
  ordered_json jsonl() const {
    return ordered_json{{"engine", engine},
                        {"n", n},
                        {"k", k},
                        {"replicate_index", replicate_index},
                        {"seed", seed},
                        {"T", terminal_time},
                        {"S_T", terminal_susceptibles},
                        {"fraction", fraction()}};
  }
};

int cmd_simulate(const SimulateArgs& args) {
  const auto engine = engine_from_string(args.engine);
  if (!engine) {
    std::cerr << "error: unknown engine '" << args.engine << "'\n";
    return kExitUsage;
  }
  const ModelParams params{args.n, args.k, args.infectives};
  try {
    validate(params);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (args.reps < 1) {
    std::cerr << "error: --reps must be >= 1\n";
    return kExitUsage;
  }

  const bool want_trajectories = !args.trajectories_path.empty();
  if (want_trajectories && engine == Engine::kGeometric) {
    std::cerr << "error: --trajectories needs the exact or walk engine\n";
    return kExitUsage;
  }
  std::ofstream trajectory_out;
  if (want_trajectories) {
    trajectory_out.open(args.trajectories_path);
    if (!trajectory_out) {
      std::cerr << "error: cannot write " << args.trajectories_path << "\n";
      return kExitUsage;
    }
    const std::int64_t per_trajectory = (params.k + 1) * params.n + 1;
    if (per_trajectory > 50'000'000 || args.reps > 50'000'000 / per_trajectory) {
      std::cerr << "error: trajectory dump too large ((k+1)*n*reps over 5e7 states)\n";
      return kExitUsage;
    }
  }

  const std::uint64_t master = resolve_seed(args.seed);
  if (args.format == "csv") {
    std::cout << "engine,n,k,replicate_index,seed,T,S_T,fraction\n";
  }

  std::vector<Outcome> outcomes;
  outcomes.reserve(static_cast<std::size_t>(args.reps));
  for (std::int64_t r = 0; r < args.reps; ++r) {
    const std::uint64_t replicate_seed = derive_seed(master, static_cast<std::uint64_t>(r));
    UniformStream stream(replicate_seed);
    Outcome outcome;
    if (want_trajectories) {
      const auto capacity = static_cast<std::size_t>((params.k + 1) * params.n + 1);
      if (*engine == Engine::kExact) {
        TrajectoryRing<ChainState> ring(capacity);
        outcome = run_exact(params, stream, &ring);
        for (const ChainState& st : ring.chronological()) {
          ordered_json j{{"replicate_index", r}, {"t", st.t}, {"s", st.s}, {"i", st.i}};
          trajectory_out << j.dump() << "\n";
        }
      } else {
        TrajectoryRing<WalkState> ring(capacity);
        outcome = run_walk_until_crossing(params, stream, &ring);
        for (const WalkState& st : ring.chronological()) {
          ordered_json j{{"replicate_index", r}, {"t", st.t}, {"s_tilde", st.s_tilde}};
          trajectory_out << j.dump() << "\n";
        }
      }
    } else {
      switch (*engine) {
        case Engine::kExact: outcome = run_exact(params, stream); break;
        case Engine::kWalk: outcome = run_walk_until_crossing(params, stream); break;
        case Engine::kGeometric: outcome = run_geometric(params, stream); break;
      }
    }
    check_outcome(params, outcome);
    outcomes.push_back(outcome);

    const RunRecord record{args.engine, params.n,        params.k,
                           r,           replicate_seed,  outcome.terminal_time,
                           outcome.terminal_susceptibles};
    if (args.format == "csv") {
      std::cout << record.csv() << "\n";
    } else {
      std::cout << record.jsonl().dump() << "\n";
    }
  }

  // Summary on stderr so stdout stays pure data. The takeoff-conditioned
  // mean excludes early-extinction replicates.
  std::vector<double> fractions;
  fractions.reserve(outcomes.size());
  for (const Outcome& o : outcomes) fractions.push_back(o.fraction(params.n));
  const SummaryStats summary = summarize(fractions);
  if (params.initial_infectives == 1) {
    const LimitPoint limit = limit_proportion(params.k);
    const ClusterCounts clusters = classify_clusters(outcomes, params, 0.05, limit);
    std::cerr << "# replicates " << args.reps << " raw_mean " << format_double(summary.mean)
              << " conditioned_mean "
              << format_double(takeoff_mean(outcomes, params, 0.05, limit)) << " std_error "
              << format_double(summary.std_error) << " y_star " << format_double(limit.y_star)
              << " outside_fraction "
              << format_double(static_cast<double>(clusters.outside) /
                               static_cast<double>(args.reps))
              << "\n";
  } else {
    std::cerr << "# replicates " << args.reps << " raw_mean " << format_double(summary.mean)
              << " std_error " << format_double(summary.std_error) << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// limit
// ---------------------------------------------------------------------------

struct LimitArgs {
  std::int64_t k = 1;
  std::int64_t kmax = 0;  // when set, print rows for k = 1..kmax
  double tol = 1e-15;
};

int cmd_limit(const LimitArgs& args) {
  const std::int64_t lo = args.kmax > 0 ? 1 : args.k;
  const std::int64_t hi = args.kmax > 0 ? args.kmax : args.k;
  if (lo < 1 || hi < lo) {
    std::cerr << "error: k range must start at 1\n";
    return kExitUsage;
  }
  std::cout << "k,y_star,x_star,exp_neg_k1,ratio,residual\n";
  for (std::int64_t k = lo; k <= hi; ++k) {
    LimitPoint p;
    try {
      p = limit_proportion(k, args.tol);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    const double reference = std::exp(-static_cast<double>(k + 1));
    std::cout << k << ',' << format_double(p.y_star) << ',' << format_double(p.x_star) << ','
              << format_double(reference) << ',' << format_double(p.y_star / reference) << ','
              << format_double(p.residual) << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> reps;
  SeededFlag seed;
  double delta = 0.05;
  double significance = 1e-3;
  double cluster_threshold = 0.01;
  std::string ingest_path;  // clusters: re-check a sweep CSV instead of simulating
};

void emit(const ordered_json& report, bool pass) {
  std::cout << report.dump() << "\n";
  std::cerr << (pass ? "[PASS] " : "[FAIL] ") << report["suite"].get<std::string>() << "\n";
}

bool suite_conservation(const VerifyArgs& args, std::uint64_t seed) {
  EnsembleConfig config;
  config.params = ModelParams{args.n.value_or(200), args.k.value_or(2), 1};
  config.replicates = args.reps.value_or(200);
  config.master_seed = seed;
  config.engine = Engine::kExact;
  config.record_trajectories = true;

  const EnsembleResult result = run_ensemble(config);
  std::int64_t violations = 0;
  std::int64_t states = 0;
  const std::int64_t expected =
      (config.params.k + 1) * config.params.initial_susceptibles() + config.params.initial_attempts();
  for (const auto& trajectory : result.trajectories) {
    for (const ChainState& st : trajectory) {
      ++states;
      if (conserved_quantity(st, config.params.k) != expected) ++violations;
    }
  }
  const bool pass = violations == 0;
  emit(ordered_json{{"suite", "conservation"},
                    {"n", config.params.n},
                    {"k", config.params.k},
                    {"replicates", config.replicates},
                    {"states_checked", states},
                    {"violations", violations},
                    {"pass", pass}},
       pass);
  return pass;
}

bool suite_coupling(const VerifyArgs& args, std::uint64_t seed) {
  const ModelParams params{args.n.value_or(100), args.k.value_or(3), 1};
  const std::int64_t reps = args.reps.value_or(10000);
  std::int64_t mismatches = 0;
  for (std::int64_t r = 0; r < reps; ++r) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(r));
    UniformStream stream_chain(s);
    UniformStream stream_walk(s);
    if (run_exact(params, stream_chain) != run_walk_until_crossing(params, stream_walk)) {
      ++mismatches;
    }
  }
  const bool pass = mismatches == 0;
  emit(ordered_json{{"suite", "coupling"},
                    {"n", params.n},
                    {"k", params.k},
                    {"replicates", reps},
                    {"mismatches", mismatches},
                    {"pass", pass}},
       pass);
  return pass;
}

bool suite_dp(const VerifyArgs& args, std::uint64_t seed) {
  const std::int64_t n = args.n.value_or(8);
  const std::int64_t k = args.k.value_or(2);
  const std::int64_t reps = args.reps.value_or(200000);
  const EquivalenceReport report = engine_equivalence(n, k, reps, seed, args.significance);
  ordered_json j{{"suite", "dp"},         {"n", n},
                 {"k", k},                {"replicates", reps},
                 {"significance", args.significance},
                 {"coupling_mismatches", report.coupling_mismatches},
                 {"dp_available", report.dp_available}};
  ordered_json laws = ordered_json::array();
  for (const EngineLawTest& test : report.law_tests) {
    laws.push_back(ordered_json{{"engine", std::string(to_string(test.engine))},
                                {"statistic", test.chi.statistic},
                                {"df", test.chi.df},
                                {"p_value", test.chi.p_value},
                                {"pass", test.pass}});
  }
  j["law_tests"] = laws;
  if (!report.dp_available) {
    j["two_sample_p_value"] = report.two_sample.p_value;
  }
  j["pass"] = report.pass;
  emit(j, report.pass);
  return report.pass;
}

bool suite_ost(const VerifyArgs& args, std::uint64_t seed) {
  const std::int64_t n = args.n.value_or(1000);
  const std::int64_t k = args.k.value_or(1);
  const std::int64_t reps = args.reps.value_or(100000);
  const OstReport mc = ost_check(n, k, reps, seed);

  // exact counterpart of the same identities at oracle scale
  const std::int64_t n_dp = std::min<std::int64_t>(n, 10);
  const ModelParams dp_params{std::max<std::int64_t>(n_dp, 3), k, 1};
  const auto [e1, e2] = ost_identities_dp(dp_params);
  const double dp_err1 = std::fabs(e1 - static_cast<double>(dp_params.n - 1));
  const double dp_err2 =
      std::fabs(e2 - static_cast<double>((dp_params.n - 1) * (dp_params.n - 2)));
  const bool dp_pass = dp_err1 < 1e-10 && dp_err2 < 1e-10;

  const bool pass = mc.pass && dp_pass;
  emit(ordered_json{{"suite", "ost"},
                    {"n", n},
                    {"k", k},
                    {"replicates", reps},
                    {"z1", mc.z1},
                    {"z2", mc.z2},
                    {"z_limit", mc.z_limit},
                    {"dp_n", dp_params.n},
                    {"dp_error_m1", dp_err1},
                    {"dp_error_m2", dp_err2},
                    {"pass", pass}},
       pass);
  return pass;
}

bool suite_variance(const VerifyArgs& args, std::uint64_t seed) {
  const VarianceReport report =
      variance_check(args.n.value_or(10000), args.k.value_or(1), args.reps.value_or(20000), seed);
  emit(ordered_json{{"suite", "variance"},
                    {"n", report.n},
                    {"k", report.k},
                    {"replicates", report.replicates},
                    {"empirical_variance", report.empirical_variance},
                    {"bound", report.bound},
                    {"ratio", report.ratio},
                    {"ratio_limit", report.ratio_limit},
                    {"outside_band_fraction", report.outside_band_fraction},
                    {"pass", report.pass}},
       report.pass);
  return report.pass;
}

bool suite_clusters(const VerifyArgs& args, std::uint64_t seed) {
  if (!args.ingest_path.empty()) {
    std::ifstream in(args.ingest_path);
    if (!in) {
      throw std::invalid_argument("cannot read " + args.ingest_path);
    }
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> outside;
    std::vector<std::int64_t> ns;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream row(line);
      std::string field;
      std::vector<std::string> fields;
      while (std::getline(row, field, ',')) fields.push_back(field);
      if (fields.size() != 7) throw std::invalid_argument("malformed sweep row: " + line);
      ns.push_back(std::stoll(fields[0]));
      outside.push_back(std::stod(fields[6]));
    }
    if (outside.empty()) throw std::invalid_argument("sweep file has no rows");
    bool trend = true;
    for (std::size_t i = 1; i < outside.size(); ++i) {
      // non-increasing up to finite-sample noise
      if (outside[i] > outside[i - 1] + 0.01) trend = false;
    }
    emit(ordered_json{{"suite", "clusters"},
                      {"source", args.ingest_path},
                      {"rows", outside.size()},
                      {"first_outside_fraction", outside.front()},
                      {"last_outside_fraction", outside.back()},
                      {"pass", trend}},
         trend);
    return trend;
  }

  EnsembleConfig config;
  config.params = ModelParams{args.n.value_or(100000), args.k.value_or(1), 1};
  config.replicates = args.reps.value_or(1000);
  config.master_seed = seed;
  const double fraction = two_cluster_check(config, args.delta);
  const bool pass = fraction < args.cluster_threshold;
  emit(ordered_json{{"suite", "clusters"},
                    {"n", config.params.n},
                    {"k", config.params.k},
                    {"replicates", config.replicates},
                    {"delta", args.delta},
                    {"outside_fraction", fraction},
                    {"threshold", args.cluster_threshold},
                    {"pass", pass}},
       pass);
  return pass;
}

bool suite_tailbound(const VerifyArgs&, std::uint64_t) {
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  for (const std::int64_t n : {1, 5, 10, 50, 200}) {
    for (int pi = 1; pi <= 19; ++pi) {
      for (int qi = pi + 1; qi <= 19; ++qi) {
        const double p = 0.05 * pi;
        const double q = 0.05 * qi;
        const double bound = binomial_tail_bound(n, p, q);
        const double exact = exact_binomial_tail(n, p, q);
        const double entropy = std::exp(-static_cast<double>(n) * relative_entropy(q, p));
        ++checked;
        if (exact > bound * (1.0 + 1e-12) || entropy > bound * (1.0 + 1e-12)) ++violations;
      }
    }
  }
  const bool pass = violations == 0;
  emit(ordered_json{{"suite", "tailbound"},
                    {"grid_points", checked},
                    {"violations", violations},
                    {"pass", pass}},
       pass);
  return pass;
}

int cmd_verify(const VerifyArgs& args) {
  static const std::vector<std::string> kSuites{"conservation", "coupling", "dp",       "ost",
                                                "variance",     "clusters", "tailbound"};
  std::vector<std::string> selected;
  if (args.suite == "all") {
    selected = kSuites;
  } else if (std::find(kSuites.begin(), kSuites.end(), args.suite) != kSuites.end()) {
    selected = {args.suite};
  } else {
    std::cerr << "error: unknown suite '" << args.suite << "'\n";
    return kExitUsage;
  }

  const std::uint64_t seed = resolve_seed(args.seed);
  bool all_pass = true;
  try {
    for (const std::string& name : selected) {
      // suite index keeps the derivation platform-stable
      const auto index = static_cast<std::uint64_t>(
          std::find(kSuites.begin(), kSuites.end(), name) - kSuites.begin());
      const std::uint64_t suite_seed = derive_seed(seed, 0x100 + index);
      bool pass = false;
      if (name == "conservation") pass = suite_conservation(args, suite_seed);
      else if (name == "coupling") pass = suite_coupling(args, suite_seed);
      else if (name == "dp") pass = suite_dp(args, suite_seed);
      else if (name == "ost") pass = suite_ost(args, suite_seed);
      else if (name == "variance") pass = suite_variance(args, suite_seed);
      else if (name == "clusters") pass = suite_clusters(args, suite_seed);
      else if (name == "tailbound") pass = suite_tailbound(args, suite_seed);
      all_pass = all_pass && pass;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return all_pass ? kExitPass : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepArgs {
  std::int64_t k = 1;
  std::string n_list;
  std::int64_t reps = 1000;
  SeededFlag seed;
  std::string out = "-";
  std::string engine = "geometric";
  double delta = 0.05;
};

int cmd_sweep(const SweepArgs& args) {
  const auto engine = engine_from_string(args.engine);
  if (!engine) {
    std::cerr << "error: unknown engine '" << args.engine << "'\n";
    return kExitUsage;
  }
  std::vector<std::int64_t> ns;
  std::stringstream list(args.n_list);
  std::string item;
  while (std::getline(list, item, ',')) {
    if (item.empty()) continue;
    char* end = nullptr;
    const double value = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0' || !(value >= 1.0) || value > 9e18) {
      std::cerr << "error: bad n-list entry '" << item << "'\n";
      return kExitUsage;
    }
    ns.push_back(static_cast<std::int64_t>(value));
  }
  if (ns.empty()) {
    std::cerr << "error: --n-list must name at least one population size\n";
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (args.out != "-") {
    file.open(args.out);
    if (!file) {
      std::cerr << "error: cannot write " << args.out << "\n";
      return kExitUsage;
    }
    out = &file;
  }

  const std::uint64_t seed = resolve_seed(args.seed);
  std::vector<SweepRow> rows;
  try {
    rows = convergence_sweep(args.k, ns, args.reps, seed, *engine, args.delta);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  *out << "n,raw_mean,conditioned_mean,stderr,y_star,abs_dev,cluster_outside_fraction\n";
  for (const SweepRow& row : rows) {
    *out << row.n << ',' << format_double(row.raw_mean) << ','
         << format_double(row.conditioned_mean) << ',' << format_double(row.std_error) << ','
         << format_double(row.y_star) << ',' << format_double(row.abs_dev) << ','
         << format_double(row.outside_fraction) << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized rumour-spreading simulation and verification laboratory"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "run replicates and stream records");
  simulate->add_option("--n", sim.n, "population size")->required();
  simulate->add_option("--k", sim.k, "failure budget")->required();
  simulate->add_option("--reps", sim.reps, "replicate count")->default_val(1);
  simulate->add_option("--infectives", sim.infectives, "initial infectives")->default_val(1);
  simulate->add_option("--seed", sim.seed.value, "master seed");
  simulate->add_option("--engine", sim.engine, "exact|walk|geometric")->default_val("geometric");
  simulate->add_option("--format", sim.format, "jsonl|csv")
      ->default_val("jsonl")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  simulate->add_option("--trajectories", sim.trajectories_path,
                       "write per-step states (jsonl) to this file");

  LimitArgs lim;
  CLI::App* limit = app.add_subcommand("limit", "solve the limiting-proportion equation");
  limit->add_option("--k", lim.k, "failure budget")->default_val(1);
  limit->add_option("--kmax", lim.kmax, "tabulate k = 1..kmax");
  limit->add_option("--tol", lim.tol, "bracket tolerance")->default_val(1e-15);

  VerifyArgs ver;
  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", ver.suite,
                     "conservation|coupling|dp|ost|variance|clusters|tailbound|all")
      ->required();
  verify->add_option("--n", ver.n, "population size override");
  verify->add_option("--k", ver.k, "failure budget override");
  verify->add_option("--reps", ver.reps, "replicate count override");
  verify->add_option("--seed", ver.seed.value, "master seed");
  verify->add_option("--delta", ver.delta, "cluster ball radius")->default_val(0.05);
  verify->add_option("--significance", ver.significance, "chi-square significance")
      ->default_val(1e-3);
  verify->add_option("--threshold", ver.cluster_threshold, "max outside-fraction for clusters")
      ->default_val(0.01);
  verify->add_option("--in", ver.ingest_path, "clusters: re-check a sweep CSV");

  SweepArgs swp;
  CLI::App* sweep = app.add_subcommand("sweep", "convergence table over population sizes");
  sweep->add_option("--k", swp.k, "failure budget")->required();
  sweep->add_option("--n-list", swp.n_list, "comma-separated population sizes")->required();
  sweep->add_option("--reps", swp.reps, "replicates per size")->default_val(1000);
  sweep->add_option("--seed", swp.seed.value, "master seed");
  sweep->add_option("--out", swp.out, "output CSV path, - for stdout")->default_val("-");
  sweep->add_option("--engine", swp.engine, "exact|walk|geometric")->default_val("geometric");
  sweep->add_option("--delta", swp.delta, "cluster ball radius")->default_val(0.05);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  sim.seed.provided = simulate->count("--seed") > 0;
  ver.seed.provided = verify->count("--seed") > 0;
  swp.seed.provided = sweep->count("--seed") > 0;

  try {
    if (app.got_subcommand(simulate)) return cmd_simulate(sim);
    if (app.got_subcommand(limit)) return cmd_limit(lim);
    if (app.got_subcommand(verify)) return cmd_verify(ver);
    if (app.got_subcommand(sweep)) return cmd_sweep(swp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
