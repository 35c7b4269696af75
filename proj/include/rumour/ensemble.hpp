#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rumour/analysis.hpp"
#include "rumour/dp.hpp"
#include "rumour/model.hpp"
#include "rumour/stats.hpp"
#include "rumour/walk.hpp"

// Monte Carlo ensembles and the statistical verifiers built on them. Every
// replicate draws its stream from derive_seed(master_seed, replicate), so
// results are a pure function of the configuration, independent of
// execution order.

namespace rumour {

enum class Engine { kExact, kWalk, kGeometric };

std::string_view to_string(Engine engine);
std::optional<Engine> engine_from_string(std::string_view name);

struct EnsembleConfig {
  ModelParams params;
  std::int64_t replicates = 1;
  std::uint64_t master_seed = 0;
  Engine engine = Engine::kGeometric;
  bool record_trajectories = false;  // exact engine only; memory-guarded
  double cluster_delta = 0.05;       // ball radius for the two-cluster split
};

struct ClusterCounts {
  std::int64_t near_extinction = 0;  // (T/n, S_T/n) within delta of (0, 1)
  std::int64_t near_takeoff = 0;     // within delta of (x*, y*)
  std::int64_t outside = 0;
};

struct EnsembleStats {
  std::int64_t replicates = 0;
  double mean_fraction = 0.0;  // raw mean of S_T/n over all replicates
  double var_fraction = 0.0;
  double std_error = 0.0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
  double mean_t_over_n = 0.0;
  // Mean of S_T/n over the takeoff cluster; NaN when that cluster is empty.
  // Reported alongside the raw mean because finite-sample means mix the
  // extinction and takeoff clusters.
  double takeoff_mean_fraction = 0.0;
  ClusterCounts clusters;
  double delta = 0.0;
  double x_star = 0.0;
  double y_star = 0.0;
};

struct EnsembleResult {
  EnsembleStats stats;
  std::vector<Outcome> outcomes;                         // replicate order
  std::vector<std::vector<ChainState>> trajectories;     // when recorded
};

// One replicate on the given engine from its own seed.
Outcome run_replicate(const ModelParams& params, Engine engine, std::uint64_t seed);

// Runs the configured ensemble; every outcome passes check_outcome.
EnsembleResult run_ensemble(const EnsembleConfig& config);

ClusterCounts classify_clusters(std::span<const Outcome> outcomes, const ModelParams& params,
                                double delta, const LimitPoint& limit);

// Mean of S_T/n over the takeoff ball; NaN when it is empty.
double takeoff_mean(std::span<const Outcome> outcomes, const ModelParams& params, double delta,
                    const LimitPoint& limit);

// Fraction of replicates whose scaled terminal point lies outside both
// delta-balls.
double two_cluster_check(const EnsembleConfig& config, double delta);

// Fraction of replicates whose clamped scaled terminal point has residual
// norm above epsilon; decreases with n.
double residual_exceed_fraction(std::span<const Outcome> outcomes, const ModelParams& params,
                                double epsilon);

struct OstReport {
  std::int64_t n = 0, k = 0, replicates = 0;
  double m1_mean = 0.0, m1_std_error = 0.0, z1 = 0.0;  // target n - 1
  double m2_mean = 0.0, m2_std_error = 0.0, z2 = 0.0;  // target (n-1)(n-2)
  double z_limit = 4.0;
  bool pass = false;
};

// Monte Carlo check of the optional-stopping identities
// E[(n/(n-1))^T S_T] = n - 1 and E[(n/(n-2))^T (S_T^2 - S_T)] = (n-1)(n-2).
// Requires n >= 3.
OstReport ost_check(std::int64_t n, std::int64_t k, std::int64_t replicates, std::uint64_t seed,
                    Engine engine = Engine::kGeometric);

// The same two expectations evaluated exactly under the terminal law.
std::pair<double, double> ost_identities_dp(const ModelParams& params);

struct VarianceReport {
  std::int64_t n = 0, k = 0, replicates = 0;
  double empirical_variance = 0.0;
  double bound = 0.0;  // (e^{k+1}-1)(n-1)/n^2
  double ratio = 0.0;
  double ratio_limit = 2.0;                // slack for an asymptotic bound
  double outside_band_fraction = 0.0;      // P(|(n/(n-1))^T S_T/n - 1| > 0.05)
  bool pass = false;
};

VarianceReport variance_check(std::int64_t n, std::int64_t k, std::int64_t replicates,
                              std::uint64_t seed, Engine engine = Engine::kGeometric);

struct EngineLawTest {
  Engine engine = Engine::kExact;
  ChiSquareResult chi;
  bool pass = false;
};

struct EquivalenceReport {
  std::int64_t n = 0, k = 0, replicates = 0;
  double significance = 1e-3;
  std::int64_t coupling_runs = 0;
  std::int64_t coupling_mismatches = 0;
  bool coupling_pass = false;
  bool dp_available = false;
  std::vector<EngineLawTest> law_tests;  // each engine vs the exact law
  ChiSquareResult two_sample;            // geometric vs exact when no DP
  bool two_sample_pass = false;
  bool pass = false;
};

// (a) exact vs walk on a shared stream must agree replicate by replicate;
// (b) when the DP grid is feasible, each engine's empirical law is tested
//     against it; (c) otherwise geometric vs exact runs a two-sample test.
EquivalenceReport engine_equivalence(std::int64_t n, std::int64_t k, std::int64_t replicates,
                                     std::uint64_t seed, double significance = 1e-3);

struct SweepRow {
  std::int64_t n = 0;
  double raw_mean = 0.0;
  double conditioned_mean = 0.0;  // takeoff cluster only
  double std_error = 0.0;
  double y_star = 0.0;
  double abs_dev = 0.0;  // |conditioned_mean - y_star|
  double outside_fraction = 0.0;
};

std::vector<SweepRow> convergence_sweep(std::int64_t k, std::span<const std::int64_t> n_list,
                                        std::int64_t replicates, std::uint64_t seed,
                                        Engine engine = Engine::kGeometric, double delta = 0.05);

}  // namespace rumour
