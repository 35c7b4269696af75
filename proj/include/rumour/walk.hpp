#pragma once

#include <cstdint>
#include <vector>

#include "rumour/model.hpp"
#include "rumour/rng.hpp"

// The lazy non-increasing walk coupled to the exact chain: it shares the
// chain's success branch, so driven by the same uniform stream the two
// agree pathwise up to the terminal time. Termination becomes a level
// crossing, and the sojourn times at successive levels are independent
// geometrics, which yields an O(n) sampling path for the terminal pair.

namespace rumour {

struct WalkState {
  std::int64_t s_tilde = 0;  // current level, non-increasing
  std::int64_t t = 0;

  bool operator==(const WalkState&) const = default;
};

// Decrement with probability s/n, else hold. Level 0 is absorbing.
inline WalkState step_walk(const WalkState& state, std::int64_t n, double u) noexcept {
  if (contact_succeeds(state.s_tilde, n, u)) {
    return {state.s_tilde - 1, state.t + 1};
  }
  return {state.s_tilde, state.t + 1};
}

// Walks from (n-1, 0) until the first t with (k+1)(n - s) <= t + 1, the
// step at which the exact chain's attempt counter hits zero. Requires a
// single initial infective. Consumes exactly T uniforms.
Outcome run_walk_until_crossing(const ModelParams& params, UniformStream& stream,
                                TrajectoryRing<WalkState>* trajectory = nullptr);

// Number of trials to the first success, support {1, 2, ...}, sampled by
// inversion from u in (0,1]. Requires p in (0,1].
std::int64_t sample_geometric(double p, double u);

// Sojourn of the walk at level n - level, one entry per level descended.
struct GeomIncrement {
  std::int64_t level = 0;    // j >= 1
  std::int64_t sojourn = 0;  // X_j >= 1

  bool operator==(const GeomIncrement&) const = default;
};

// Success probability of the sojourn at the given level: (n - level)/n.
constexpr double sojourn_success_probability(std::int64_t n, std::int64_t level) noexcept {
  return static_cast<double>(n - level) / static_cast<double>(n);
}

// Samples the terminal pair by drawing the level sojourns directly:
// X_j ~ Geom((n-j)/n), stopping at the first j with X_1+...+X_j >= (k+1)j.
// Level n has an infinite sojourn, so the condition holds there without a
// draw (and without an increment record). Expected work O(n - S_T).
// Requires a single initial infective.
Outcome run_geometric(const ModelParams& params, UniformStream& stream,
                      std::vector<GeomIncrement>* increments = nullptr);

}  // namespace rumour
