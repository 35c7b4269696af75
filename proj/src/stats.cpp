#include "rumour/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rumour {

namespace {
constexpr double kZ95 = 1.959963984540054;
}

SummaryStats summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty sample");
  SummaryStats s;
  s.count = std::ssize(values);
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (const double v : values) {
      const double d = v - s.mean;
      ss += d * d;
    }
    s.variance = ss / static_cast<double>(s.count - 1);
  }
  s.std_error = std::sqrt(s.variance / static_cast<double>(s.count));
  s.ci95_lo = s.mean - kZ95 * s.std_error;
  s.ci95_hi = s.mean + kZ95 * s.std_error;
  return s;
}

double chi_square_tail(double statistic, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("chi_square_tail: df must be positive");
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(df / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_gof(std::span<const std::int64_t> observed,
                               std::span<const double> expected_probs,
                               double min_expected) {
  if (observed.size() != expected_probs.size()) {
    throw std::invalid_argument("chi_square_gof: category count mismatch");
  }
  const double total =
      static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::int64_t{0}));
  if (total <= 0.0) throw std::invalid_argument("chi_square_gof: no observations");

  std::vector<double> bin_obs;
  std::vector<double> bin_exp;
  double acc_obs = 0.0;
  double acc_exp = 0.0;
  for (std::size_t c = 0; c < observed.size(); ++c) {
    acc_obs += static_cast<double>(observed[c]);
    acc_exp += total * expected_probs[c];
    if (acc_exp >= min_expected) {
      bin_obs.push_back(acc_obs);
      bin_exp.push_back(acc_exp);
      acc_obs = 0.0;
      acc_exp = 0.0;
    }
  }
  if (acc_exp > 0.0 || acc_obs > 0.0) {
    if (bin_obs.empty()) {
      bin_obs.push_back(acc_obs);
      bin_exp.push_back(acc_exp);
    } else {
      bin_obs.back() += acc_obs;
      bin_exp.back() += acc_exp;
    }
  }

  ChiSquareResult result;
  result.bins = std::ssize(bin_obs);
  result.df = result.bins - 1;
  for (std::size_t b = 0; b < bin_obs.size(); ++b) {
    const double d = bin_obs[b] - bin_exp[b];
    result.statistic += d * d / bin_exp[b];
  }
  result.p_value =
      result.df >= 1 ? chi_square_tail(result.statistic, static_cast<double>(result.df)) : 1.0;
  return result;
}

ChiSquareResult chi_square_two_sample(std::span<const std::int64_t> counts_a,
                                      std::span<const std::int64_t> counts_b,
                                      double min_pooled) {
  if (counts_a.size() != counts_b.size()) {
    throw std::invalid_argument("chi_square_two_sample: category count mismatch");
  }
  const double total_a =
      static_cast<double>(std::accumulate(counts_a.begin(), counts_a.end(), std::int64_t{0}));
  const double total_b =
      static_cast<double>(std::accumulate(counts_b.begin(), counts_b.end(), std::int64_t{0}));
  if (total_a <= 0.0 || total_b <= 0.0) {
    throw std::invalid_argument("chi_square_two_sample: empty sample");
  }

  std::vector<double> bin_a;
  std::vector<double> bin_b;
  double acc_a = 0.0;
  double acc_b = 0.0;
  for (std::size_t c = 0; c < counts_a.size(); ++c) {
    acc_a += static_cast<double>(counts_a[c]);
    acc_b += static_cast<double>(counts_b[c]);
    if (acc_a + acc_b >= min_pooled) {
      bin_a.push_back(acc_a);
      bin_b.push_back(acc_b);
      acc_a = 0.0;
      acc_b = 0.0;
    }
  }
  if (acc_a > 0.0 || acc_b > 0.0) {
    if (bin_a.empty()) {
      bin_a.push_back(acc_a);
      bin_b.push_back(acc_b);
    } else {
      bin_a.back() += acc_a;
      bin_b.back() += acc_b;
    }
  }

  ChiSquareResult result;
  result.bins = std::ssize(bin_a);
  result.df = result.bins - 1;
  const double grand = total_a + total_b;
  for (std::size_t b = 0; b < bin_a.size(); ++b) {
    const double pooled = bin_a[b] + bin_b[b];
    const double ea = total_a * pooled / grand;
    const double eb = total_b * pooled / grand;
    const double da = bin_a[b] - ea;
    const double db = bin_b[b] - eb;
    result.statistic += da * da / ea + db * db / eb;
  }
  result.p_value =
      result.df >= 1 ? chi_square_tail(result.statistic, static_cast<double>(result.df)) : 1.0;
  return result;
}

}  // namespace rumour
