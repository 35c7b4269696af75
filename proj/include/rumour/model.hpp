#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rumour/rng.hpp"

// Exact rumour chain. A population of n individuals; each step one pending
// infection attempt is spent on a uniformly chosen member (self-contact
// allowed, so the success probability is s/n). A success converts a
// susceptible and grants the new infective k attempts; a failure burns one
// attempt. The aggregate attempt counter i subsumes the per-infective
// failure counts, which gives the minimal Markov state (s, i).

namespace rumour {

// Caps keep (k+1)n and related products inside int64 everywhere.
inline constexpr std::int64_t kMaxPopulation = 1'000'000'000;
inline constexpr std::int64_t kMaxFailureBudget = 1'000'000;

struct ModelParams {
  std::int64_t n = 1;                   // population size
  std::int64_t k = 1;                   // failed attempts tolerated per infective
  std::int64_t initial_infectives = 1;

  std::int64_t initial_susceptibles() const noexcept { return n - initial_infectives; }
  std::int64_t initial_attempts() const noexcept { return k * initial_infectives; }
};

// Throws std::invalid_argument unless 1 <= n <= 1e9, 1 <= k <= 1e6 and
// 1 <= initial_infectives <= n.
void validate(const ModelParams& params);

struct ChainState {
  std::int64_t s = 0;  // susceptibles
  std::int64_t i = 0;  // infection attempts remaining
  std::int64_t t = 0;  // elapsed steps

  bool operator==(const ChainState&) const = default;
};

// (k+1)s + i + t. Invariant along every trajectory; equals
// (k+1)(n-1) + k under the default single-infective start.
constexpr std::int64_t conserved_quantity(const ChainState& state, std::int64_t k) noexcept {
  return (k + 1) * state.s + state.i + state.t;
}

struct Outcome {
  std::int64_t terminal_time = 0;          // T: first step with i = 0
  std::int64_t terminal_susceptibles = 0;  // S_T: who never heard the rumour

  double fraction(std::int64_t n) const noexcept {
    return static_cast<double>(terminal_susceptibles) / static_cast<double>(n);
  }

  bool operator==(const Outcome&) const = default;
};

// Shared branch predicate of the exact chain and the coupled walk. Both
// engines must decide success identically from the same uniform for the
// pathwise coupling to be bit-exact.
inline bool contact_succeeds(std::int64_t s, std::int64_t n, double u) noexcept {
  return u < static_cast<double>(s) / static_cast<double>(n);
}

// One contact. Requires i > 0 (throws std::logic_error at a terminal state).
inline ChainState step_exact(const ChainState& state, const ModelParams& params, double u) {
  if (state.i <= 0) {
    throw std::logic_error("step_exact: process has terminated (i = 0)");
  }
  if (contact_succeeds(state.s, params.n, u)) {
    return {state.s - 1, state.i + params.k, state.t + 1};
  }
  return {state.s, state.i - 1, state.t + 1};
}

// Bounded trajectory storage holding the most recent `capacity` states; a
// full trajectory has (k+1)n + 1 entries, which callers rarely want whole.
template <typename State>
class TrajectoryRing {
 public:
  explicit TrajectoryRing(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("TrajectoryRing: capacity must be positive");
  }

  void push(const State& state) {
    if (buffer_.size() < capacity_) {
      buffer_.push_back(state);
    } else {
      buffer_[head_] = state;
      head_ = (head_ + 1) % capacity_;
    }
    ++total_;
  }

  // States seen, including ones already evicted.
  std::size_t total_recorded() const noexcept { return total_; }

  // Retained states, oldest first.
  std::vector<State> chronological() const {
    std::vector<State> out;
    out.reserve(buffer_.size());
    for (std::size_t d = 0; d < buffer_.size(); ++d) {
      out.push_back(buffer_[(head_ + d) % buffer_.size()]);
    }
    return out;
  }

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;
  std::size_t total_ = 0;
  std::vector<State> buffer_;
};

// Runs the chain until the attempt counter hits zero. Consumes exactly T
// uniforms. The optional ring records the initial state and every step.
Outcome run_exact(const ModelParams& params, UniformStream& stream,
                  TrajectoryRing<ChainState>* trajectory = nullptr);

// Terminal identities implied by conservation: with m initial infectives,
// (k+1)(n - S_T) = T + m, 0 <= S_T <= n - m, km <= T <= (k+1)n. For m = 1
// this is the divisibility pair (T+1) % (k+1) == 0, S_T = n - (T+1)/(k+1).
// Throws std::logic_error on any violation.
void check_outcome(const ModelParams& params, const Outcome& outcome);

}  // namespace rumour
