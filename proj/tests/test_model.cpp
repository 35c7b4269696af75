#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "rumour/dp.hpp"
#include "rumour/model.hpp"
#include "rumour/rng.hpp"
#include "rumour/stats.hpp"

using namespace rumour;

namespace {

// Independent oracle: exhaustive path enumeration of the chain tree. Kept
// deliberately naive (no DP, no shared state with the implementation) so
// it can arbitrate the forward dynamic program at small n.
void enumerate_paths(std::int64_t s, std::int64_t i, std::int64_t n, std::int64_t k, double prob,
                     std::vector<double>& law) {
  if (i == 0) {
    law[static_cast<std::size_t>(s)] += prob;
    return;
  }
  const double p_success = static_cast<double>(s) / static_cast<double>(n);
  if (s > 0) enumerate_paths(s - 1, i + k, n, k, prob * p_success, law);
  enumerate_paths(s, i - 1, n, k, prob * (1.0 - p_success), law);
}

std::vector<double> enumerated_law(const ModelParams& params) {
  std::vector<double> law(static_cast<std::size_t>(params.n), 0.0);
  enumerate_paths(params.initial_susceptibles(), params.initial_attempts(), params.n, params.k,
                  1.0, law);
  return law;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate(ModelParams{0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ModelParams{5, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ModelParams{5, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ModelParams{5, 1, 6}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ModelParams{kMaxPopulation + 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ModelParams{5, kMaxFailureBudget + 1, 1}), std::invalid_argument);
  CHECK_NOTHROW(validate(ModelParams{1, 7, 1}));
}

TEST_CASE("conserved quantity at the initial state") {
  // (k+1)(n-1) + k
  CHECK(conserved_quantity(ChainState{2, 1, 0}, 1) == 5);  // n=3, k=1
  const ModelParams params{10, 3, 1};
  const ChainState init{params.initial_susceptibles(), params.initial_attempts(), 0};
  CHECK(conserved_quantity(init, params.k) == 4 * 9 + 3);
}

TEST_CASE("single step transitions") {
  // self-contact always fails when s = 0
  const ChainState a = step_exact(ChainState{0, 2, 0}, ModelParams{1, 2, 1}, 0.999);
  CHECK(a == ChainState{0, 1, 1});

  // u < 2/3 forces an infection; i rises by k
  const ChainState b = step_exact(ChainState{2, 1, 0}, ModelParams{3, 1, 1}, 0.5);
  CHECK(b == ChainState{1, 2, 1});

  CHECK_THROWS_AS(step_exact(ChainState{2, 0, 4}, ModelParams{3, 1, 1}, 0.1), std::logic_error);
}

TEST_CASE("steps preserve the conserved quantity") {
  const ModelParams params{7, 2, 1};
  UniformStream stream(11);
  ChainState state{params.initial_susceptibles(), params.initial_attempts(), 0};
  const std::int64_t value = conserved_quantity(state, params.k);
  while (state.i > 0) {
    state = step_exact(state, params, stream.next());
    CHECK(conserved_quantity(state, params.k) == value);
  }
}

TEST_CASE("run_exact: n=1 is forced") {
  for (const std::int64_t k : {1, 2, 5}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      UniformStream stream(derive_seed(42, seed));
      const Outcome o = run_exact(ModelParams{1, k, 1}, stream);
      CHECK(o.terminal_time == k);
      CHECK(o.terminal_susceptibles == 0);
      CHECK(stream.draw_count() == static_cast<std::uint64_t>(k));
    }
  }
}

TEST_CASE("run_exact consumes exactly T uniforms") {
  const ModelParams params{40, 2, 1};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    UniformStream stream(derive_seed(7, seed));
    const Outcome o = run_exact(params, stream);
    CHECK(stream.draw_count() == static_cast<std::uint64_t>(o.terminal_time));
  }
}

TEST_CASE("trajectories conserve and terminate within the bound") {
  for (const std::int64_t n : {2, 5, 17}) {
    for (const std::int64_t k : {1, 3}) {
      const ModelParams params{n, k, 1};
      const std::int64_t value = (k + 1) * (n - 1) + k;
      for (std::uint64_t seed = 0; seed < 30; ++seed) {
        TrajectoryRing<ChainState> ring(static_cast<std::size_t>((k + 1) * n + 1));
        UniformStream stream(derive_seed(99, seed * 100 + static_cast<std::uint64_t>(n)));
        const Outcome o = run_exact(params, stream, &ring);
        const auto trajectory = ring.chronological();
        CHECK(trajectory.size() == static_cast<std::size_t>(o.terminal_time) + 1);
        for (const ChainState& st : trajectory) {
          CHECK(conserved_quantity(st, k) == value);
        }
        CHECK(o.terminal_time <= (k + 1) * n);
        CHECK_NOTHROW(check_outcome(params, o));
      }
    }
  }
}

TEST_CASE("check_outcome rejects corrupted pairs") {
  const ModelParams params{10, 1, 1};
  CHECK_THROWS_AS(check_outcome(params, Outcome{4, 7}), std::logic_error);   // indivisible
  CHECK_THROWS_AS(check_outcome(params, Outcome{5, 6}), std::logic_error);   // wrong S_T
  CHECK_THROWS_AS(check_outcome(params, Outcome{0, 10}), std::logic_error);  // T too small
  CHECK_NOTHROW(check_outcome(params, Outcome{5, 7}));
}

TEST_CASE("trajectory ring keeps the most recent states") {
  TrajectoryRing<ChainState> ring(3);
  for (std::int64_t t = 0; t < 7; ++t) ring.push(ChainState{0, 0, t});
  CHECK(ring.total_recorded() == 7);
  const auto kept = ring.chronological();
  REQUIRE(kept.size() == 3);
  CHECK(kept[0].t == 4);
  CHECK(kept[2].t == 6);
  CHECK_THROWS_AS(TrajectoryRing<ChainState>(0), std::invalid_argument);
}

TEST_CASE("terminal law: forced and hand-enumerated cases") {
  SUBCASE("n=1 puts all mass at zero") {
    const TerminalDistribution dist = terminal_distribution_dp(ModelParams{1, 4, 1});
    REQUIRE(dist.mass.size() == 1);
    CHECK(dist.mass[0] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("n=2, k=1") {
    const TerminalDistribution dist = terminal_distribution_dp(ModelParams{2, 1, 1});
    CHECK(std::fabs(dist.mass[0] - 0.5) < 1e-12);
    CHECK(std::fabs(dist.mass[1] - 0.5) < 1e-12);
  }
  SUBCASE("n=3, k=1") {
    const TerminalDistribution dist = terminal_distribution_dp(ModelParams{3, 1, 1});
    CHECK(std::fabs(dist.mass[0] - 10.0 / 27.0) < 1e-12);
    CHECK(std::fabs(dist.mass[1] - 8.0 / 27.0) < 1e-12);
    CHECK(std::fabs(dist.mass[2] - 1.0 / 3.0) < 1e-12);
  }
  SUBCASE("n=3, k=2") {
    const TerminalDistribution dist = terminal_distribution_dp(ModelParams{3, 2, 1});
    CHECK(std::fabs(dist.mass[0] - 56.0 / 81.0) < 1e-12);
    CHECK(std::fabs(dist.mass[1] - 16.0 / 81.0) < 1e-12);
    CHECK(std::fabs(dist.mass[2] - 1.0 / 9.0) < 1e-12);
  }
  SUBCASE("n=4, k=1") {
    const TerminalDistribution dist = terminal_distribution_dp(ModelParams{4, 1, 1});
    CHECK(std::fabs(dist.mass[0] - 153.0 / 512.0) < 1e-12);
    CHECK(std::fabs(dist.mass[1] - 135.0 / 512.0) < 1e-12);
    CHECK(std::fabs(dist.mass[2] - 3.0 / 16.0) < 1e-12);
    CHECK(std::fabs(dist.mass[3] - 0.25) < 1e-12);
  }
  SUBCASE("n=5, k=2") {
    const TerminalDistribution dist = terminal_distribution_dp(ModelParams{5, 2, 1});
    CHECK(std::fabs(dist.mass[0] - 30907656.0 / 48828125.0) < 1e-12);
    CHECK(std::fabs(dist.mass[1] - 11065344.0 / 48828125.0) < 1e-12);
    CHECK(std::fabs(dist.mass[2] - 27216.0 / 390625.0) < 1e-12);
    CHECK(std::fabs(dist.mass[3] - 96.0 / 3125.0) < 1e-12);
    CHECK(std::fabs(dist.mass[4] - 0.04) < 1e-12);
  }
}

TEST_CASE("terminal law matches exhaustive path enumeration") {
  for (const ModelParams params :
       {ModelParams{6, 1, 1}, ModelParams{8, 1, 1}, ModelParams{6, 2, 1}, ModelParams{5, 3, 1},
        ModelParams{5, 2, 2}, ModelParams{4, 1, 4}}) {
    const TerminalDistribution dist = terminal_distribution_dp(params);
    const std::vector<double> oracle = enumerated_law(params);
    REQUIRE(dist.mass.size() == oracle.size());
    for (std::size_t s = 0; s < oracle.size(); ++s) {
      CHECK(std::fabs(dist.mass[s] - oracle[s]) < 1e-12);
    }
  }
}

TEST_CASE("terminal law mass sums to one") {
  for (std::int64_t n = 1; n <= 12; ++n) {
    for (std::int64_t k = 1; k <= 3; ++k) {
      const TerminalDistribution dist = terminal_distribution_dp(ModelParams{n, k, 1});
      CHECK(std::fabs(dist.drift()) < 1e-12);
    }
  }
}

TEST_CASE("state grid guard") {
  CHECK_THROWS_AS(terminal_distribution_dp(ModelParams{100000, 3, 1}), std::length_error);
  CHECK(dp_state_count(ModelParams{10, 2, 1}) == 11 * 23);
  // saturates rather than overflowing at the parameter caps
  CHECK(dp_state_count(ModelParams{kMaxPopulation, kMaxFailureBudget, 1}) == INT64_MAX);
}

TEST_CASE("terminal time reconstruction") {
  const ModelParams params{10, 1, 1};
  CHECK(terminal_time_for(params, 7) == 5);
  CHECK(terminal_time_for(params, 0) == 19);
  const ModelParams multi{10, 2, 3};
  // (k+1)(n - s) = T + m
  CHECK((multi.k + 1) * (multi.n - 4) == terminal_time_for(multi, 4) + multi.initial_infectives);
}

TEST_CASE("empirical law of run_exact agrees with the DP oracle") {
  const ModelParams params{10, 1, 1};
  const TerminalDistribution dist = terminal_distribution_dp(params);
  constexpr std::int64_t kReps = 200000;
  std::vector<std::int64_t> counts(10, 0);
  for (std::int64_t r = 0; r < kReps; ++r) {
    UniformStream stream(derive_seed(0x5eed, static_cast<std::uint64_t>(r)));
    const Outcome o = run_exact(params, stream);
    ++counts[static_cast<std::size_t>(o.terminal_susceptibles)];
  }
  const ChiSquareResult chi = chi_square_gof(counts, dist.mass);
  CHECK(chi.p_value >= 1e-3);
}

TEST_CASE("multiple initial infectives keep the general conservation identity") {
  const ModelParams params{9, 2, 3};
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    UniformStream stream(derive_seed(123, seed));
    const Outcome o = run_exact(params, stream);
    CHECK((params.k + 1) * (params.n - o.terminal_susceptibles) ==
          o.terminal_time + params.initial_infectives);
    CHECK_NOTHROW(check_outcome(params, o));
  }
}
