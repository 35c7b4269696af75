#include "rumour/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace rumour {

LimitPoint limit_proportion(std::int64_t k, double tol) {
  if (k < 1) throw std::invalid_argument("limit_proportion: k must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("limit_proportion: tol must be positive");

  const auto g = [k](double y) {
    return static_cast<double>(k + 1) * (1.0 - y) + std::log(y);
  };

  // g is strictly concave, g(1) = 0 and g'(1) = -k < 0, so g > 0 just left
  // of 1 and g -> -inf at 0+: exactly one more root in (0,1).
  double lo = 0.5;
  while (g(lo) >= 0.0) {
    lo *= 0.5;
    if (lo < 1e-300) throw std::logic_error("limit_proportion: bracket failure (lo)");
  }
  double delta = 0.25;
  while (!(g(1.0 - delta) > 0.0)) {
    delta *= 0.5;
    if (delta < 1e-12) throw std::logic_error("limit_proportion: bracket failure (hi)");
  }
  double hi = 1.0 - delta;

  // Keep g(lo) < 0 < g(hi) and bisect until the midpoint stops moving
  // (adjacent doubles). That is always at least as tight as tol and keeps
  // the residual at rounding level even when y* ~ e^{-(k+1)} is tiny and
  // g'(y*) ~ 1/y* amplifies any bracket slack.
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  const double y = std::fabs(g(lo)) <= std::fabs(g(hi)) ? lo : hi;
  LimitPoint point;
  point.k = k;
  point.y_star = y;
  point.x_star = static_cast<double>(k + 1) * (1.0 - y);
  point.residual = g(y);
  return point;
}

std::array<double, 2> limit_residuals(double x, double y, std::int64_t k) {
  return {x / static_cast<double>(k + 1) + y - 1.0, std::exp(x) * y - 1.0};
}

MartingaleSeries martingale_transform(std::span<const WalkState> trajectory, std::int64_t n) {
  if (n <= 2) throw std::invalid_argument("martingale_transform: n must exceed 2");
  if (trajectory.empty() || trajectory.front().s_tilde != n - 1 || trajectory.front().t != 0) {
    throw std::invalid_argument("martingale_transform: trajectory must start at (n-1, t=0)");
  }
  const double log_r1 = std::log(static_cast<double>(n) / static_cast<double>(n - 1));
  const double log_r2 = std::log(static_cast<double>(n) / static_cast<double>(n - 2));

  MartingaleSeries series;
  series.m1.reserve(trajectory.size());
  series.m2.reserve(trajectory.size());
  for (std::size_t t = 0; t < trajectory.size(); ++t) {
    const double s = static_cast<double>(trajectory[t].s_tilde);
    series.m1.push_back(std::exp(static_cast<double>(t) * log_r1) * s);
    series.m2.push_back(std::exp(static_cast<double>(t) * log_r2) * s * (s - 1.0));
  }
  series.stopped_at = std::ssize(trajectory) - 1;
  return series;
}

double variance_bound(std::int64_t k, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("variance_bound: n must be >= 2");
  return std::expm1(static_cast<double>(k + 1)) * static_cast<double>(n - 1) /
         (static_cast<double>(n) * static_cast<double>(n));
}

double binomial_tail_bound(const TailBoundQuery& query) {
  if (query.trials < 0) throw std::invalid_argument("binomial_tail_bound: trials must be >= 0");
  if (!(query.p > 0.0) || !(query.p < 1.0)) {
    throw std::invalid_argument("binomial_tail_bound: p must lie in (0,1)");
  }
  if (!(query.q >= query.p) || query.q > 1.0) {
    throw std::invalid_argument("binomial_tail_bound: q must lie in [p, 1]");
  }
  const double exponent = query.q * std::log(query.q / query.p) - query.q + query.p;
  return std::exp(-static_cast<double>(query.trials) * exponent);
}

double exact_binomial_tail(std::int64_t trials, double p, double q) {
  if (trials < 0) throw std::invalid_argument("exact_binomial_tail: trials must be >= 0");
  if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("exact_binomial_tail: p must lie in [0,1]");

  const auto threshold = static_cast<std::int64_t>(std::ceil(static_cast<double>(trials) * q));
  if (threshold <= 0) return 1.0;
  if (threshold > trials) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;

  const double n = static_cast<double>(trials);
  const double log_p = std::log(p);
  const double log_1mp = std::log1p(-p);
  std::vector<double> log_terms;
  log_terms.reserve(static_cast<std::size_t>(trials - threshold + 1));
  for (std::int64_t j = threshold; j <= trials; ++j) {
    const double jd = static_cast<double>(j);
    const double log_choose =
        std::lgamma(n + 1.0) - std::lgamma(jd + 1.0) - std::lgamma(n - jd + 1.0);
    log_terms.push_back(log_choose + jd * log_p + (n - jd) * log_1mp);
  }
  std::sort(log_terms.begin(), log_terms.end());
  const double top = log_terms.back();
  double acc = 0.0;
  for (const double lt : log_terms) acc += std::exp(lt - top);
  const double tail = std::exp(top) * acc;
  return tail < 1.0 ? tail : 1.0;
}

double relative_entropy(double q, double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("relative_entropy: p must lie in (0,1)");
  if (!(q > 0.0) || q > 1.0) throw std::invalid_argument("relative_entropy: q must lie in (0,1]");
  double h = q * std::log(q / p);
  if (q < 1.0) h += (1.0 - q) * std::log((1.0 - q) / (1.0 - p));
  return h;
}

}  // namespace rumour
