#include "rumour/ensemble.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rumour {

namespace {

// Seed-space tags so the engine legs of a comparison never share streams.
enum : std::uint64_t { kTagExact = 0x45584143, kTagWalk = 0x57414c4b, kTagGeom = 0x47454f4d };

std::uint64_t engine_tag(Engine engine) {
  switch (engine) {
    case Engine::kExact: return kTagExact;
    case Engine::kWalk: return kTagWalk;
    case Engine::kGeometric: return kTagGeom;
  }
  throw std::logic_error("engine_tag: bad engine");
}

double hypot2(double dx, double dy) { return std::sqrt(dx * dx + dy * dy); }

enum class Cluster { kExtinction, kTakeoff, kOutside };

// Ball membership of a scaled terminal point; the extinction ball wins ties
// when delta is large enough for the balls to overlap.
Cluster cluster_of(const Outcome& outcome, const ModelParams& params, double delta,
                   const LimitPoint& limit) {
  const double x = static_cast<double>(outcome.terminal_time) / static_cast<double>(params.n);
  const double y = outcome.fraction(params.n);
  if (hypot2(x, y - 1.0) < delta) return Cluster::kExtinction;
  if (hypot2(x - limit.x_star, y - limit.y_star) < delta) return Cluster::kTakeoff;
  return Cluster::kOutside;
}

std::vector<std::int64_t> terminal_counts(const ModelParams& params, Engine engine,
                                          std::int64_t replicates, std::uint64_t master) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(params.n), 0);
  for (std::int64_t r = 0; r < replicates; ++r) {
    const Outcome outcome = run_replicate(params, engine, derive_seed(master, static_cast<std::uint64_t>(r)));
    check_outcome(params, outcome);
    ++counts[static_cast<std::size_t>(outcome.terminal_susceptibles)];
  }
  return counts;
}

}  // namespace

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::kExact: return "exact";
    case Engine::kWalk: return "walk";
    case Engine::kGeometric: return "geometric";
  }
  return "?";
}

std::optional<Engine> engine_from_string(std::string_view name) {
  if (name == "exact") return Engine::kExact;
  if (name == "walk") return Engine::kWalk;
  if (name == "geometric") return Engine::kGeometric;
  return std::nullopt;
}

Outcome run_replicate(const ModelParams& params, Engine engine, std::uint64_t seed) {
  UniformStream stream(seed);
  switch (engine) {
    case Engine::kExact: return run_exact(params, stream);
    case Engine::kWalk: return run_walk_until_crossing(params, stream);
    case Engine::kGeometric: return run_geometric(params, stream);
  }
  throw std::logic_error("run_replicate: bad engine");
}

EnsembleResult run_ensemble(const EnsembleConfig& config) {
  validate(config.params);
  if (config.replicates < 1) {
    throw std::invalid_argument("run_ensemble: replicates must be >= 1");
  }
  if (!(config.cluster_delta > 0.0)) {
    throw std::invalid_argument("run_ensemble: cluster_delta must be positive");
  }
  if (config.record_trajectories) {
    if (config.engine != Engine::kExact) {
      throw std::invalid_argument("run_ensemble: trajectory recording needs the exact engine");
    }
    const std::int64_t per_trajectory = (config.params.k + 1) * config.params.n + 1;
    if (per_trajectory > 50'000'000 || config.replicates > 50'000'000 / per_trajectory) {
      throw std::invalid_argument("run_ensemble: recorded trajectories would exceed memory guard");
    }
  }

  const std::int64_t n = config.params.n;
  EnsembleResult result;
  result.outcomes.reserve(static_cast<std::size_t>(config.replicates));

  for (std::int64_t r = 0; r < config.replicates; ++r) {
    const std::uint64_t seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(r));
    Outcome outcome;
    if (config.record_trajectories) {
      const auto capacity = static_cast<std::size_t>((config.params.k + 1) * n + 1);
      TrajectoryRing<ChainState> ring(capacity);
      UniformStream stream(seed);
      outcome = run_exact(config.params, stream, &ring);
      result.trajectories.push_back(ring.chronological());
    } else {
      outcome = run_replicate(config.params, config.engine, seed);
    }
    check_outcome(config.params, outcome);
    result.outcomes.push_back(outcome);
  }

  const LimitPoint limit = limit_proportion(config.params.k);
  std::vector<double> fractions;
  fractions.reserve(result.outcomes.size());
  double t_over_n_sum = 0.0;
  for (const Outcome& o : result.outcomes) {
    fractions.push_back(o.fraction(n));
    t_over_n_sum += static_cast<double>(o.terminal_time) / static_cast<double>(n);
  }
  const SummaryStats summary = summarize(fractions);

  EnsembleStats& stats = result.stats;
  stats.replicates = config.replicates;
  stats.mean_fraction = summary.mean;
  stats.var_fraction = summary.variance;
  stats.std_error = summary.std_error;
  stats.ci95_lo = summary.ci95_lo;
  stats.ci95_hi = summary.ci95_hi;
  stats.mean_t_over_n = t_over_n_sum / static_cast<double>(config.replicates);
  stats.delta = config.cluster_delta;
  stats.x_star = limit.x_star;
  stats.y_star = limit.y_star;
  stats.clusters = classify_clusters(result.outcomes, config.params, config.cluster_delta, limit);

  stats.takeoff_mean_fraction =
      takeoff_mean(result.outcomes, config.params, config.cluster_delta, limit);
  return result;
}

double takeoff_mean(std::span<const Outcome> outcomes, const ModelParams& params, double delta,
                    const LimitPoint& limit) {
  double sum = 0.0;
  std::int64_t count = 0;
  for (const Outcome& o : outcomes) {
    if (cluster_of(o, params, delta, limit) == Cluster::kTakeoff) {
      sum += o.fraction(params.n);
      ++count;
    }
  }
  return count > 0 ? sum / static_cast<double>(count)
                   : std::numeric_limits<double>::quiet_NaN();
}

ClusterCounts classify_clusters(std::span<const Outcome> outcomes, const ModelParams& params,
                                double delta, const LimitPoint& limit) {
  ClusterCounts counts;
  for (const Outcome& o : outcomes) {
    switch (cluster_of(o, params, delta, limit)) {
      case Cluster::kExtinction: ++counts.near_extinction; break;
      case Cluster::kTakeoff: ++counts.near_takeoff; break;
      case Cluster::kOutside: ++counts.outside; break;
    }
  }
  return counts;
}

double two_cluster_check(const EnsembleConfig& config, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("two_cluster_check: delta must be positive");
  EnsembleConfig local = config;
  local.cluster_delta = delta;
  const EnsembleResult result = run_ensemble(local);
  return static_cast<double>(result.stats.clusters.outside) /
         static_cast<double>(result.stats.replicates);
}

double residual_exceed_fraction(std::span<const Outcome> outcomes, const ModelParams& params,
                                double epsilon) {
  if (outcomes.empty()) throw std::invalid_argument("residual_exceed_fraction: empty sample");
  std::int64_t exceed = 0;
  for (const Outcome& o : outcomes) {
    const auto [x, y] = clamp_to_box(static_cast<double>(o.terminal_time) / static_cast<double>(params.n),
                                     o.fraction(params.n), params.k);
    const auto res = limit_residuals(x, y, params.k);
    if (hypot2(res[0], res[1]) > epsilon) ++exceed;
  }
  return static_cast<double>(exceed) / static_cast<double>(outcomes.size());
}

OstReport ost_check(std::int64_t n, std::int64_t k, std::int64_t replicates, std::uint64_t seed,
                    Engine engine) {
  if (n < 3) throw std::invalid_argument("ost_check: n must be >= 3");
  const ModelParams params{n, k, 1};
  validate(params);
  if (replicates < 2) throw std::invalid_argument("ost_check: needs at least 2 replicates");

  const double log_r1 = std::log(static_cast<double>(n) / static_cast<double>(n - 1));
  const double log_r2 = std::log(static_cast<double>(n) / static_cast<double>(n - 2));
  std::vector<double> m1_values;
  std::vector<double> m2_values;
  m1_values.reserve(static_cast<std::size_t>(replicates));
  m2_values.reserve(static_cast<std::size_t>(replicates));
  for (std::int64_t r = 0; r < replicates; ++r) {
    const Outcome o = run_replicate(params, engine, derive_seed(seed, static_cast<std::uint64_t>(r)));
    check_outcome(params, o);
    const double t = static_cast<double>(o.terminal_time);
    const double s = static_cast<double>(o.terminal_susceptibles);
    m1_values.push_back(std::exp(t * log_r1) * s);
    m2_values.push_back(std::exp(t * log_r2) * (s * s - s));
  }

  OstReport report;
  report.n = n;
  report.k = k;
  report.replicates = replicates;
  const SummaryStats s1 = summarize(m1_values);
  const SummaryStats s2 = summarize(m2_values);
  const double target1 = static_cast<double>(n - 1);
  const double target2 = static_cast<double>(n - 1) * static_cast<double>(n - 2);
  report.m1_mean = s1.mean;
  report.m1_std_error = s1.std_error;
  report.z1 = (s1.mean - target1) / s1.std_error;
  report.m2_mean = s2.mean;
  report.m2_std_error = s2.std_error;
  report.z2 = (s2.mean - target2) / s2.std_error;
  report.pass = std::fabs(report.z1) <= report.z_limit && std::fabs(report.z2) <= report.z_limit;
  return report;
}

std::pair<double, double> ost_identities_dp(const ModelParams& params) {
  if (params.n < 3) throw std::invalid_argument("ost_identities_dp: n must be >= 3");
  if (params.initial_infectives != 1) {
    throw std::invalid_argument("ost_identities_dp: identities assume a single initial infective");
  }
  const TerminalDistribution dist = terminal_distribution_dp(params);
  const double n = static_cast<double>(params.n);
  const double log_r1 = std::log(n / (n - 1.0));
  const double log_r2 = std::log(n / (n - 2.0));
  const double e1 = dp_expectation(dist, params, [&](std::int64_t t, std::int64_t s) {
    return std::exp(static_cast<double>(t) * log_r1) * static_cast<double>(s);
  });
  const double e2 = dp_expectation(dist, params, [&](std::int64_t t, std::int64_t s) {
    const double sd = static_cast<double>(s);
    return std::exp(static_cast<double>(t) * log_r2) * (sd * sd - sd);
  });
  return {e1, e2};
}

VarianceReport variance_check(std::int64_t n, std::int64_t k, std::int64_t replicates,
                              std::uint64_t seed, Engine engine) {
  const ModelParams params{n, k, 1};
  validate(params);
  if (n < 10000) {
    throw std::invalid_argument("variance_check: the bound is asymptotic, needs n >= 10000");
  }
  if (replicates < 2) throw std::invalid_argument("variance_check: needs at least 2 replicates");

  const double log_r1 = std::log(static_cast<double>(n) / static_cast<double>(n - 1));
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(replicates));
  std::int64_t outside_band = 0;
  for (std::int64_t r = 0; r < replicates; ++r) {
    const Outcome o = run_replicate(params, engine, derive_seed(seed, static_cast<std::uint64_t>(r)));
    check_outcome(params, o);
    const double v = std::exp(static_cast<double>(o.terminal_time) * log_r1) * o.fraction(n);
    values.push_back(v);
    if (std::fabs(v - 1.0) > 0.05) ++outside_band;
  }

  VarianceReport report;
  report.n = n;
  report.k = k;
  report.replicates = replicates;
  report.empirical_variance = summarize(values).variance;
  report.bound = variance_bound(k, n);
  report.ratio = report.empirical_variance / report.bound;
  report.outside_band_fraction =
      static_cast<double>(outside_band) / static_cast<double>(replicates);
  report.pass = report.ratio <= report.ratio_limit;
  return report;
}

EquivalenceReport engine_equivalence(std::int64_t n, std::int64_t k, std::int64_t replicates,
                                     std::uint64_t seed, double significance) {
  const ModelParams params{n, k, 1};
  validate(params);
  if (n > 100'000'000) {
    throw std::invalid_argument("engine_equivalence: n too large for histogram comparison");
  }
  if (replicates < 1) throw std::invalid_argument("engine_equivalence: replicates must be >= 1");

  EquivalenceReport report;
  report.n = n;
  report.k = k;
  report.replicates = replicates;
  report.significance = significance;

  // (a) pathwise coupling: one shared stream per replicate seed.
  report.coupling_runs = replicates;
  for (std::int64_t r = 0; r < replicates; ++r) {
    const std::uint64_t s = derive_seed(derive_seed(seed, 0xC0), static_cast<std::uint64_t>(r));
    UniformStream stream_exact(s);
    UniformStream stream_walk(s);
    const Outcome a = run_exact(params, stream_exact);
    const Outcome b = run_walk_until_crossing(params, stream_walk);
    if (a != b || stream_exact.draw_count() != stream_walk.draw_count()) {
      ++report.coupling_mismatches;
    }
  }
  report.coupling_pass = report.coupling_mismatches == 0;

  report.dp_available = dp_state_count(params) <= kMaxDpStates;
  bool laws_pass = true;
  if (report.dp_available) {
    const TerminalDistribution dist = terminal_distribution_dp(params);
    for (const Engine engine : {Engine::kExact, Engine::kWalk, Engine::kGeometric}) {
      const auto counts =
          terminal_counts(params, engine, replicates, derive_seed(seed, engine_tag(engine)));
      EngineLawTest test;
      test.engine = engine;
      test.chi = chi_square_gof(counts, dist.mass);
      test.pass = test.chi.p_value >= significance;
      laws_pass = laws_pass && test.pass;
      report.law_tests.push_back(test);
    }
    report.two_sample_pass = true;
  } else {
    const auto counts_exact =
        terminal_counts(params, Engine::kExact, replicates, derive_seed(seed, kTagExact));
    const auto counts_geom =
        terminal_counts(params, Engine::kGeometric, replicates, derive_seed(seed, kTagGeom));
    report.two_sample = chi_square_two_sample(counts_exact, counts_geom);
    report.two_sample_pass = report.two_sample.p_value >= significance;
  }

  report.pass = report.coupling_pass && laws_pass && report.two_sample_pass;
  return report;
}

std::vector<SweepRow> convergence_sweep(std::int64_t k, std::span<const std::int64_t> n_list,
                                        std::int64_t replicates, std::uint64_t seed,
                                        Engine engine, double delta) {
  if (n_list.empty()) throw std::invalid_argument("convergence_sweep: n_list must be non-empty");
  std::vector<SweepRow> rows;
  rows.reserve(n_list.size());
  for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
    EnsembleConfig config;
    config.params = ModelParams{n_list[idx], k, 1};
    config.replicates = replicates;
    config.master_seed = derive_seed(seed, static_cast<std::uint64_t>(idx));
    config.engine = engine;
    config.cluster_delta = delta;
    const EnsembleResult result = run_ensemble(config);

    SweepRow row;
    row.n = n_list[idx];
    row.raw_mean = result.stats.mean_fraction;
    row.conditioned_mean = result.stats.takeoff_mean_fraction;
    row.std_error = result.stats.std_error;
    row.y_star = result.stats.y_star;
    row.abs_dev = std::fabs(row.conditioned_mean - row.y_star);
    row.outside_fraction = static_cast<double>(result.stats.clusters.outside) /
                           static_cast<double>(result.stats.replicates);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rumour
