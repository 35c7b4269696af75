#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rumour/walk.hpp"

// Deterministic mathematics behind the simulators: the limiting proportion
// of never-informed individuals, the residual map whose zeros characterise
// it, the exponential martingale transforms of the walk, and binomial tail
// bounds with their exact counterpart.

namespace rumour {

struct LimitPoint {
  std::int64_t k = 0;
  double y_star = 0.0;   // limiting fraction never informed, in (0,1)
  double x_star = 0.0;   // limiting T/n on the takeoff cluster, (k+1)(1 - y*)
  double residual = 0.0; // (k+1)(1 - y*) + log(y*) at the returned root
};

// Solves (k+1)(1-y) = -log y on (0,1) by bisection. The bracket is built by
// halving from 0.5 until the objective goes negative and backing off from 1
// until it is positive; bisection then runs to the requested width and on
// to adjacent doubles, so the residual sits at rounding level for every k.
LimitPoint limit_proportion(std::int64_t k, double tol = 1e-15);

// Residuals of the two terminal identities at a scaled point (x, y) =
// (T/n, S_T/n): {x/(k+1) + y - 1, e^x y - 1}. Zero exactly at (0, 1) and at
// (x*, y*).
std::array<double, 2> limit_residuals(double x, double y, std::int64_t k);

// Clamp an empirical scaled point into the box [0, k+1] x [0, 1].
inline std::pair<double, double> clamp_to_box(double x, double y, std::int64_t k) noexcept {
  return {std::clamp(x, 0.0, static_cast<double>(k + 1)), std::clamp(y, 0.0, 1.0)};
}

struct MartingaleSeries {
  std::vector<double> m1;  // (n/(n-1))^t s_t
  std::vector<double> m2;  // (n/(n-2))^t s_t (s_t - 1)
  std::int64_t stopped_at = 0;
};

// Both transforms along a walk trajectory that starts at (n-1, 0) and ends
// at the crossing. Growth factors are accumulated as t * log(n/(n-1)) and
// exponentiated per entry; the factor stays below e^{k+1} because
// t <= (k+1)n. Requires n > 2 (the second transform divides by n - 2).
MartingaleSeries martingale_transform(std::span<const WalkState> trajectory, std::int64_t n);

// (e^{k+1} - 1)(n - 1)/n^2: asymptotic bound on Var{(n/(n-1))^T S_T / n}.
double variance_bound(std::int64_t k, std::int64_t n);

struct TailBoundQuery {
  std::int64_t trials = 0;
  double p = 0.0;  // binomial success probability, in (0,1)
  double q = 0.0;  // deviation level, p <= q <= 1
};

// exp(-n [q log(q/p) - q + p]), an upper bound on P(Bin(n,p) >= nq).
// q == p is the boundary case and yields 1; q < p is a parameter error.
double binomial_tail_bound(const TailBoundQuery& query);

inline double binomial_tail_bound(std::int64_t trials, double p, double q) {
  return binomial_tail_bound(TailBoundQuery{trials, p, q});
}

// Exact P(Bin(n,p) >= ceil(nq)) by log-space summation, smallest terms
// first.
double exact_binomial_tail(std::int64_t trials, double p, double q);

// Relative entropy of Bernoulli(q) with respect to Bernoulli(p); the
// exponent of the Chernoff bound. q = 1 uses the 0 log 0 = 0 convention.
double relative_entropy(double q, double p);

}  // namespace rumour
