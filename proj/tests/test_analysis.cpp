#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "rumour/analysis.hpp"
#include "rumour/walk.hpp"

using namespace rumour;

TEST_CASE("limiting proportion for the classic model") {
  const LimitPoint p = limit_proportion(1);
  // root of 2(1-y) = -log y, frozen from a high-precision bisection
  CHECK(std::fabs(p.y_star - 0.20318786997997995) < 1e-12);
  CHECK(std::fabs(p.y_star - 0.203) < 1e-3);
  CHECK(std::fabs(p.residual) <= 1e-12);
  CHECK(p.x_star == doctest::Approx(2.0 * (1.0 - p.y_star)).epsilon(1e-15));
  CHECK(std::fabs(std::exp(p.x_star) * p.y_star - 1.0) < 1e-10);
}

TEST_CASE("limiting proportion: more frozen roots") {
  CHECK(std::fabs(limit_proportion(2).y_star - 0.059520209292640369) < 1e-12);
  const LimitPoint p10 = limit_proportion(10);
  CHECK(std::fabs(p10.y_star - 1.6704770051011928e-5) < 1e-15);
  CHECK(std::fabs(p10.y_star / std::exp(-11.0) - 1.0) < 0.001);
}

TEST_CASE("limiting proportion decreases in k with tiny residuals") {
  double prev = 1.0;
  for (std::int64_t k = 1; k <= 20; ++k) {
    const LimitPoint p = limit_proportion(k);
    CHECK(p.y_star > 0.0);
    CHECK(p.y_star < prev);
    CHECK(std::fabs(p.residual) <= 1e-12);
    CHECK(std::fabs(std::exp(p.x_star) * p.y_star - 1.0) < 1e-10);
    prev = p.y_star;
  }
}

TEST_CASE("objective has exactly one sign change left of 1") {
  for (std::int64_t k = 1; k <= 20; ++k) {
    const auto g = [k](double y) { return static_cast<double>(k + 1) * (1.0 - y) + std::log(y); };
    // log-spaced grid over (1e-12, 1 - 1e-6); y*(20) ~ 7.6e-10 sits inside
    int sign_changes = 0;
    double prev = g(1e-12);
    const int points = 4000;
    for (int i = 1; i <= points; ++i) {
      const double y = std::exp(std::log(1e-12) +
                                (std::log(1.0 - 1e-6) - std::log(1e-12)) * i / points);
      const double cur = g(y);
      if ((prev < 0.0) != (cur < 0.0)) ++sign_changes;
      prev = cur;
    }
    CHECK(sign_changes == 1);
  }
}

TEST_CASE("limit solver rejects bad arguments") {
  CHECK_THROWS_AS(limit_proportion(0), std::invalid_argument);
  CHECK_THROWS_AS(limit_proportion(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(limit_proportion(1, -1e-9), std::invalid_argument);
}

TEST_CASE("residual map zeros and values") {
  const auto at_origin = limit_residuals(0.0, 1.0, 3);
  CHECK(at_origin[0] == 0.0);
  CHECK(at_origin[1] == 0.0);

  const LimitPoint p = limit_proportion(2);
  const auto at_star = limit_residuals(p.x_star, p.y_star, 2);
  CHECK(std::fabs(at_star[0]) < 1e-10);
  CHECK(std::fabs(at_star[1]) < 1e-10);

  const auto corner = limit_residuals(0.0, 0.0, 1);
  CHECK(corner[0] == -1.0);
  CHECK(corner[1] == -1.0);

  const auto [cx, cy] = clamp_to_box(5.0, -0.25, 1);
  CHECK(cx == 2.0);
  CHECK(cy == 0.0);
}

TEST_CASE("martingale transforms along a walk trajectory") {
  const ModelParams params{50, 1, 1};
  TrajectoryRing<WalkState> ring(static_cast<std::size_t>((params.k + 1) * params.n + 1));
  UniformStream stream(8);
  const Outcome o = run_walk_until_crossing(params, stream, &ring);
  const auto trajectory = ring.chronological();
  const MartingaleSeries series = martingale_transform(trajectory, params.n);

  REQUIRE(series.stopped_at == o.terminal_time);
  REQUIRE(std::ssize(series.m1) == o.terminal_time + 1);
  CHECK(series.m1[0] == doctest::Approx(49.0).epsilon(1e-14));
  CHECK(series.m2[0] == doctest::Approx(49.0 * 48.0).epsilon(1e-14));

  // one-step conditional expectation returns the current value:
  // (1 - s/n) r^{t+1} s + (s/n) r^{t+1} (s-1) = r^t s with r = n/(n-1)
  const double n = static_cast<double>(params.n);
  for (std::size_t t = 0; t + 1 < trajectory.size(); ++t) {
    const double s = static_cast<double>(trajectory[t].s_tilde);
    const double factor_next = std::exp((static_cast<double>(t) + 1.0) * std::log(n / (n - 1.0)));
    const double expected = (1.0 - s / n) * factor_next * s + (s / n) * factor_next * (s - 1.0);
    const double current = series.m1[t];
    if (current > 0.0) {
      CHECK(std::fabs(expected - current) / current < 1e-12);
    } else {
      CHECK(expected == 0.0);
    }
  }
}

TEST_CASE("martingale transform argument checks") {
  const std::vector<WalkState> bad_start{WalkState{3, 0}};
  CHECK_THROWS_AS(martingale_transform(bad_start, 50), std::invalid_argument);
  const std::vector<WalkState> fine{WalkState{1, 0}};
  CHECK_THROWS_AS(martingale_transform(fine, 2), std::invalid_argument);
  CHECK_THROWS_AS(martingale_transform(std::vector<WalkState>{}, 50), std::invalid_argument);
}

TEST_CASE("variance bound values") {
  CHECK(std::fabs(variance_bound(1, 10000) - 6.388417193320757e-4) < 1e-16);
  CHECK(variance_bound(1, 100000) < variance_bound(1, 10000));
  CHECK(variance_bound(1, 1000000) < variance_bound(1, 100000));
  CHECK_THROWS_AS(variance_bound(1, 1), std::invalid_argument);
}

TEST_CASE("binomial tail bound") {
  CHECK(binomial_tail_bound(7, 0.3, 0.3) == 1.0);  // boundary q = p
  CHECK(std::fabs(binomial_tail_bound(1, 0.5, 1.0) - 0.82436063535006407) < 1e-15);
  CHECK(exact_binomial_tail(1, 0.5, 1.0) <= binomial_tail_bound(1, 0.5, 1.0));

  CHECK_THROWS_AS(binomial_tail_bound(5, 0.6, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(binomial_tail_bound(5, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(binomial_tail_bound(5, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(binomial_tail_bound(-1, 0.2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(binomial_tail_bound(5, 0.2, 1.5), std::invalid_argument);
}

TEST_CASE("exact binomial tail") {
  CHECK(exact_binomial_tail(20, 0.3, 0.0) == 1.0);
  CHECK(exact_binomial_tail(1, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
  // frozen from an independent high-precision summation
  CHECK(std::fabs(exact_binomial_tail(20, 0.3, 0.5) - 0.047961897331343463) < 1e-14);
  CHECK(std::fabs(exact_binomial_tail(50, 0.2, 0.4) - 9.3243648942112377e-4) < 1e-16);
  CHECK(exact_binomial_tail(20, 0.3, 0.5) <= binomial_tail_bound(20, 0.3, 0.5));

  CHECK(exact_binomial_tail(10, 0.0, 0.5) == 0.0);
  CHECK(exact_binomial_tail(10, 0.0, 0.0) == 1.0);
  CHECK(exact_binomial_tail(10, 1.0, 0.7) == 1.0);
  CHECK(exact_binomial_tail(10, 0.5, 1.2) == 0.0);  // threshold beyond n
  CHECK_THROWS_AS(exact_binomial_tail(-2, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(exact_binomial_tail(5, -0.1, 0.5), std::invalid_argument);
}

TEST_CASE("relative entropy") {
  CHECK(relative_entropy(0.3, 0.3) == 0.0);
  CHECK(relative_entropy(1.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(relative_entropy(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(relative_entropy(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(relative_entropy(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(relative_entropy(1.2, 0.5), std::invalid_argument);

  for (double q = 0.05; q < 1.0; q += 0.05) {
    for (double p = 0.05; p < 1.0; p += 0.05) {
      CHECK(relative_entropy(q, p) >= -1e-15);
      // log x <= x - 1 turns the entropy into the looser linear exponent
      CHECK(relative_entropy(q, p) >= q * std::log(q / p) - q + p - 1e-12);
    }
  }
}

TEST_CASE("tail bound dominates the exact tail and the entropy bound") {
  for (const std::int64_t n : {1, 5, 10, 50}) {
    for (double p = 0.05; p < 0.96; p += 0.05) {
      for (double q = p + 0.05; q < 0.96; q += 0.05) {
        const double bound = binomial_tail_bound(n, p, q);
        const double exact = exact_binomial_tail(n, p, q);
        const double entropy = std::exp(-static_cast<double>(n) * relative_entropy(q, p));
        CHECK(exact <= entropy * (1.0 + 1e-12));
        CHECK(entropy <= bound * (1.0 + 1e-12));
      }
    }
  }
}
