#include "rumour/model.hpp"

#include <string>

namespace rumour {

void validate(const ModelParams& params) {
  if (params.n < 1 || params.n > kMaxPopulation) {
    throw std::invalid_argument("ModelParams: n must lie in [1, 1e9], got " +
                                std::to_string(params.n));
  }
  if (params.k < 1 || params.k > kMaxFailureBudget) {
    throw std::invalid_argument("ModelParams: k must lie in [1, 1e6], got " +
                                std::to_string(params.k));
  }
  if (params.initial_infectives < 1 || params.initial_infectives > params.n) {
    throw std::invalid_argument("ModelParams: initial_infectives must lie in [1, n], got " +
                                std::to_string(params.initial_infectives));
  }
}

Outcome run_exact(const ModelParams& params, UniformStream& stream,
                  TrajectoryRing<ChainState>* trajectory) {
  validate(params);
  ChainState state{params.initial_susceptibles(), params.initial_attempts(), 0};
  const std::int64_t invariant = conserved_quantity(state, params.k);
  if (trajectory) trajectory->push(state);
  while (state.i > 0) {
    state = step_exact(state, params, stream.next());
    if (trajectory) trajectory->push(state);
  }
  if (conserved_quantity(state, params.k) != invariant) {
    throw std::logic_error("run_exact: conserved quantity drifted");
  }
  return {state.t, state.s};
}

void check_outcome(const ModelParams& params, const Outcome& outcome) {
  const std::int64_t n = params.n;
  const std::int64_t k = params.k;
  const std::int64_t m = params.initial_infectives;
  const std::int64_t t = outcome.terminal_time;
  const std::int64_t s = outcome.terminal_susceptibles;

  if ((t + m) % (k + 1) != 0) {
    throw std::logic_error("Outcome: (T + m) not divisible by k + 1");
  }
  if (s != n - (t + m) / (k + 1)) {
    throw std::logic_error("Outcome: S_T != n - (T + m)/(k + 1)");
  }
  if (s < 0 || s > n - m) {
    throw std::logic_error("Outcome: terminal susceptibles out of range");
  }
  if (t < k * m || t > (k + 1) * n) {
    throw std::logic_error("Outcome: terminal time out of range");
  }
}

}  // namespace rumour
