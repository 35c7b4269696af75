#include "rumour/walk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rumour {

namespace {

void require_single_infective(const ModelParams& params, const char* who) {
  validate(params);
  if (params.initial_infectives != 1) {
    throw std::invalid_argument(std::string(who) + ": requires a single initial infective");
  }
}

}  // namespace

Outcome run_walk_until_crossing(const ModelParams& params, UniformStream& stream,
                                TrajectoryRing<WalkState>* trajectory) {
  require_single_infective(params, "run_walk_until_crossing");
  WalkState state{params.n - 1, 0};
  if (trajectory) trajectory->push(state);
  while ((params.k + 1) * (params.n - state.s_tilde) > state.t + 1) {
    state = step_walk(state, params.n, stream.next());
    if (trajectory) trajectory->push(state);
  }
  return {state.t, state.s_tilde};
}

std::int64_t sample_geometric(double p, double u) {
  if (!(p > 0.0) || p > 1.0) {
    throw std::invalid_argument("sample_geometric: p must lie in (0,1]");
  }
  if (!(u > 0.0) || u > 1.0) {
    throw std::invalid_argument("sample_geometric: u must lie in (0,1]");
  }
  if (p == 1.0) return 1;
  const double raw = std::ceil(std::log(u) / std::log1p(-p));
  const auto x = static_cast<std::int64_t>(raw);
  return x < 1 ? 1 : x;
}

Outcome run_geometric(const ModelParams& params, UniformStream& stream,
                      std::vector<GeomIncrement>* increments) {
  require_single_infective(params, "run_geometric");
  const std::int64_t n = params.n;
  const std::int64_t k = params.k;
  std::int64_t sojourn_sum = 0;
  for (std::int64_t j = 1; j < n; ++j) {
    const std::int64_t x = sample_geometric(sojourn_success_probability(n, j), stream.next_open());
    if (increments) increments->push_back({j, x});
    sojourn_sum += x;
    if (sojourn_sum >= (k + 1) * j) {
      return {(k + 1) * j - 1, n - j};
    }
  }
  return {(k + 1) * n - 1, 0};
}

}  // namespace rumour
