#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rumour {

struct SummaryStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;   // sample variance, n - 1 denominator
  double std_error = 0.0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
};

SummaryStats summarize(std::span<const double> values);

struct ChiSquareResult {
  double statistic = 0.0;
  std::int64_t df = 0;
  double p_value = 1.0;
  std::int64_t bins = 0;  // after merging low-expectation categories
};

// Upper tail of the chi-square distribution with `df` degrees of freedom.
double chi_square_tail(double statistic, double df);

// Goodness of fit of observed category counts against exact probabilities.
// Adjacent categories are merged until each bin's expected count reaches
// min_expected; the trailing remainder folds into the last bin.
ChiSquareResult chi_square_gof(std::span<const std::int64_t> observed,
                               std::span<const double> expected_probs,
                               double min_expected = 5.0);

// Two-sample homogeneity test over aligned category counts, merging until
// each bin's pooled count reaches min_pooled.
ChiSquareResult chi_square_two_sample(std::span<const std::int64_t> counts_a,
                                      std::span<const std::int64_t> counts_b,
                                      double min_pooled = 10.0);

}  // namespace rumour
