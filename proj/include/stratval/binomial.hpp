#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace stratval {

// A count of successes out of a number of independent trials, each succeeding
// with the same base probability.
struct BinomialQuery {
    long long successes = 0;  // k, 0 <= k <= trials
    long long trials = 0;     // n, n >= 0
    double base_prob = 0.5;   // per-trial success probability in [0, 1]
};

// P[X == k].  Exact integer arithmetic for small n, log-space deviance
// expansion otherwise; relative error stays below 1e-9 up to n = 1e7.
double binom_pmf(const BinomialQuery& q);

// P[X <= k]
double binom_cdf(const BinomialQuery& q);

// P[X >= k] — the probability that a blind coin-flipper does at least as well.
double binom_sf(const BinomialQuery& q);

// Probability that the best of m independent attempts reaches an
// equal-or-better score: 1 - (1 - binom_sf(q))^m.  m == 1 returns
// binom_sf(q) unchanged.
double best_of_m(const BinomialQuery& q, long long attempts);

// Same correction applied to an already-computed single-attempt probability.
double best_of_m(double single_prob, long long attempts);

// Joint probability of two independent random successes.
double intersect(double p1, double p2);

// Aggregate per-result random-success probabilities reported by independent
// sources.  Results at or below `cutoff` count as informative and multiply;
// the rest only widen the attempt count: with q the product of informative
// values and m = 1 + (number of non-informative results), the combined value
// is 1 - (1 - q)^m.  A single informative result passes through exactly.
double combine_results(std::span<const double> probs, double cutoff = 0.05);

// Wilson score interval for a binomial proportion at the given two-sided
// confidence level.  Returns {lower, upper}, clamped to [0, 1].
std::pair<double, double> wilson_interval(long long successes, long long trials,
                                          double confidence = 0.95);

namespace detail {

// log(n!) - log(Stirling approximation of n!)
double stirlerr(double n);

// x * log(x / np) + np - x, evaluated without cancellation
double bd0(double x, double np);

// inverse standard normal CDF
double normal_quantile(double p);

}  // namespace detail

}  // namespace stratval
