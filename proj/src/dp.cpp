#include "rumour/dp.hpp"

#include <stdexcept>
#include <string>

namespace rumour {

TerminalDistribution terminal_distribution_dp(const ModelParams& params) {
  validate(params);
  if (dp_state_count(params) > kMaxDpStates) {
    throw std::length_error("terminal_distribution_dp: state grid has " +
                            std::to_string(dp_state_count(params)) + " cells, guard is " +
                            std::to_string(kMaxDpStates));
  }

  const std::int64_t n = params.n;
  const std::int64_t k = params.k;
  const std::int64_t s0 = params.initial_susceptibles();
  // At column s the counter satisfies i <= km + k(s0 - s) <= kn, so kn + k
  // slots cover every success push.
  const std::int64_t i_max = k * n;

  TerminalDistribution dist;
  dist.n = n;
  dist.mass.assign(static_cast<std::size_t>(n), 0.0);

  // column[i] = mass at (s, i) for the column currently being drained.
  // Failures cascade within a column (i descending), successes feed the
  // next column at i + k, so one sweep per s value suffices.
  std::vector<double> column(static_cast<std::size_t>(i_max + k) + 1, 0.0);
  std::vector<double> next(column.size(), 0.0);
  column[static_cast<std::size_t>(params.initial_attempts())] = 1.0;

  for (std::int64_t s = s0; s >= 0; --s) {
    const double p_success = static_cast<double>(s) / static_cast<double>(n);
    for (std::int64_t i = i_max; i >= 1; --i) {
      const double m = column[static_cast<std::size_t>(i)];
      if (m == 0.0) continue;
      if (s > 0) next[static_cast<std::size_t>(i + k)] += m * p_success;
      const double fail = m * (1.0 - p_success);
      if (i == 1) {
        dist.mass[static_cast<std::size_t>(s)] += fail;
      } else {
        column[static_cast<std::size_t>(i - 1)] += fail;
      }
    }
    column.swap(next);
    next.assign(next.size(), 0.0);
  }

  return dist;
}

}  // namespace rumour
