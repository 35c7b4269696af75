#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "rumour/model.hpp"

// Exact terminal law of the chain at small n, obtained by pushing
// probability mass forward over the (s, i) grid. Conservation makes (s, i)
// a sufficient state: the elapsed time is implied, so the grid has at most
// (n+1)(kn + k + 1) cells.

namespace rumour {

struct TerminalDistribution {
  std::int64_t n = 0;
  std::vector<double> mass;  // index = terminal susceptible count, size n

  double total_mass() const {
    return std::accumulate(mass.begin(), mass.end(), 0.0);
  }
  // Signed deviation of the mass sum from 1. Reported, never repaired.
  double drift() const { return total_mass() - 1.0; }
};

inline constexpr std::int64_t kMaxDpStates = 10'000'000;

// Grid size used by the feasibility guard, saturating instead of
// overflowing at extreme parameters.
constexpr std::int64_t dp_state_count(const ModelParams& params) noexcept {
  const auto states = static_cast<__int128>(params.n + 1) *
                      (static_cast<__int128>(params.k) * params.n + params.k + 1);
  constexpr auto kInt64Max = static_cast<__int128>(INT64_MAX);
  return states > kInt64Max ? INT64_MAX : static_cast<std::int64_t>(states);
}

// Throws std::length_error when the grid exceeds kMaxDpStates.
TerminalDistribution terminal_distribution_dp(const ModelParams& params);

// The terminal time is a deterministic function of the terminal
// susceptible count: (k+1)(n - S_T) = T + m.
constexpr std::int64_t terminal_time_for(const ModelParams& params, std::int64_t s_final) noexcept {
  return (params.k + 1) * (params.n - s_final) - params.initial_infectives;
}

// E[g(T, S_T)] under the exact terminal law.
template <typename F>
double dp_expectation(const TerminalDistribution& dist, const ModelParams& params, F&& g) {
  double acc = 0.0;
  for (std::int64_t s = 0; s < std::ssize(dist.mass); ++s) {
    if (dist.mass[s] == 0.0) continue;
    acc += dist.mass[s] * g(terminal_time_for(params, s), s);
  }
  return acc;
}

}  // namespace rumour
