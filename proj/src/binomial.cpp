#include "stratval/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stratval/errors.hpp"

namespace stratval {

namespace {

constexpr double kLogSqrtTwoPi = 0.918938533204672741780329736406;  // log(sqrt(2*pi))

// Largest n whose central binomial coefficient still fits a double exactly
// (C(56,28) < 2^53), so dyadic base probabilities give bit-exact results.
constexpr long long kExactPathMaxTrials = 56;

void check_query(const BinomialQuery& q) {
    if (q.trials < 0)
        throw domain_error("trials must be >= 0, got " + std::to_string(q.trials));
    if (q.successes < 0 || q.successes > q.trials)
        throw domain_error("successes must lie in [0, trials], got " +
                           std::to_string(q.successes) + " of " + std::to_string(q.trials));
    if (!(q.base_prob >= 0.0 && q.base_prob <= 1.0))
        throw domain_error("base probability must lie in [0, 1]");
}

// C(n, k) as a double, exact for n <= kExactPathMaxTrials.
double binom_coeff(long long n, long long k) {
    if (k > n - k) k = n - k;
    // multiply/divide in an order that keeps every intermediate integral
    unsigned long long c = 1;
    for (long long j = 1; j <= k; ++j)
        c = c * static_cast<unsigned long long>(n - k + j) / static_cast<unsigned long long>(j);
    return static_cast<double>(c);
}

double pmf_exact(long long k, long long n, double p) {
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    return binom_coeff(n, k) * std::pow(p, static_cast<double>(k)) *
           std::pow(1.0 - p, static_cast<double>(n - k));
}

double log_pmf(long long kk, long long nn, double p) {
    const double k = static_cast<double>(kk);
    const double n = static_cast<double>(nn);
    if (kk == 0) return n * std::log1p(-p);
    if (kk == nn) return n * std::log(p);
    const double lc = detail::stirlerr(n) - detail::stirlerr(k) - detail::stirlerr(n - k) -
                      detail::bd0(k, n * p) - detail::bd0(n - k, n * (1.0 - p));
    return lc + 0.5 * std::log(n / (2.0 * M_PI * k * (n - k)));
}

double pmf_large(long long k, long long n, double p) {
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    return std::exp(log_pmf(k, n, p));
}

double pmf_dispatch(long long k, long long n, double p) {
    return n <= kExactPathMaxTrials ? pmf_exact(k, n, p) : pmf_large(k, n, p);
}

// sum of pmf over j = k..n, summed away from the mode so terms only shrink
double upper_tail(long long k, long long n, double p) {
    if (n <= kExactPathMaxTrials) {
        double s = 0.0;
        for (long long j = n; j >= k; --j) s += pmf_exact(j, n, p);
        return std::min(s, 1.0);
    }
    double term = pmf_large(k, n, p);
    double sum = term;
    const double odds = p / (1.0 - p);
    for (long long j = k; j < n; ++j) {
        const double ratio = odds * static_cast<double>(n - j) / static_cast<double>(j + 1);
        term *= ratio;
        sum += term;
        if (ratio < 1.0 && term < sum * 1e-18) break;
    }
    return std::min(sum, 1.0);
}

// sum of pmf over j = 0..k
double lower_tail(long long k, long long n, double p) {
    if (n <= kExactPathMaxTrials) {
        double s = 0.0;
        for (long long j = 0; j <= k; ++j) s += pmf_exact(j, n, p);
        return std::min(s, 1.0);
    }
    double term = pmf_large(k, n, p);
    double sum = term;
    const double inv_odds = (1.0 - p) / p;
    for (long long j = k; j > 0; --j) {
        const double ratio = inv_odds * static_cast<double>(j) / static_cast<double>(n - j + 1);
        term *= ratio;
        sum += term;
        if (ratio < 1.0 && term < sum * 1e-18) break;
    }
    return std::min(sum, 1.0);
}

}  // namespace

namespace detail {

double stirlerr(double n) {
    // series in 1/n^2 for large n; direct lgamma evaluation below the
    // radius where the truncated series is accurate to ~1e-16
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    if (n < 16.0) {
        return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - kLogSqrtTwoPi;
    }
    const double nn = n * n;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

double bd0(double x, double np) {
    if (!(np > 0.0)) throw domain_error("bd0 expects np > 0");
    if (x == 0.0) return np;
    if (std::abs(x - np) < 0.1 * (x + np)) {
        // x log(x/np) + np - x through the series of log((1+v)/(1-v))
        const double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2.0 * x * v;
        const double v2 = v * v;
        for (int j = 1;; ++j) {
            ej *= v2;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
    }
    return x * std::log(x / np) + np - x;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw domain_error("quantile argument must lie in (0, 1)");

    // Acklam's rational approximation, then one Halley step through erfc
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double u = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
            ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double u = p - 0.5;
        const double r = u * u;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double u = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
            ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }

    const double e = 0.5 * std::erfc(-x / M_SQRT2) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace detail

double binom_pmf(const BinomialQuery& q) {
    check_query(q);
    return pmf_dispatch(q.successes, q.trials, q.base_prob);
}

double binom_cdf(const BinomialQuery& q) {
    check_query(q);
    const long long k = q.successes, n = q.trials;
    const double p = q.base_prob;
    if (k >= n) return 1.0;
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;  // k < n
    if (static_cast<double>(k) < static_cast<double>(n) * p)
        return lower_tail(k, n, p);
    return std::max(0.0, 1.0 - upper_tail(k + 1, n, p));
}

double binom_sf(const BinomialQuery& q) {
    check_query(q);
    const long long k = q.successes, n = q.trials;
    const double p = q.base_prob;
    if (k <= 0) return 1.0;
    if (p == 0.0) return 0.0;  // k > 0
    if (p == 1.0) return 1.0;
    if (static_cast<double>(k) > static_cast<double>(n) * p)
        return upper_tail(k, n, p);
    return std::max(0.0, 1.0 - lower_tail(k - 1, n, p));
}

double best_of_m(const BinomialQuery& q, long long attempts) {
    return best_of_m(binom_sf(q), attempts);
}

double best_of_m(double single_prob, long long attempts) {
    if (attempts < 1)
        throw domain_error("attempt count must be >= 1, got " + std::to_string(attempts));
    if (!(single_prob >= 0.0 && single_prob <= 1.0))
        throw domain_error("probability must lie in [0, 1]");
    if (attempts == 1) return single_prob;
    if (single_prob >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(attempts) * std::log1p(-single_prob));
}

double intersect(double p1, double p2) {
    if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0))
        throw domain_error("probabilities must lie in [0, 1]");
    return p1 * p2;
}

double combine_results(std::span<const double> probs, double cutoff) {
    if (probs.empty()) throw domain_error("need at least one result to combine");
    if (!(cutoff > 0.0 && cutoff < 1.0)) throw domain_error("cutoff must lie in (0, 1)");
    double informative = 1.0;
    long long widening = 0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0))
            throw domain_error("probabilities must lie in [0, 1]");
        if (p <= cutoff)
            informative *= p;
        else
            ++widening;  // a weak result only proves one more try was made
    }
    const long long m = 1 + widening;
    if (m == 1) return informative;
    if (informative >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(m) * std::log1p(-informative));
}

std::pair<double, double> wilson_interval(long long successes, long long trials,
                                          double confidence) {
    if (trials < 1) throw domain_error("trials must be >= 1");
    if (successes < 0 || successes > trials)
        throw domain_error("successes must lie in [0, trials]");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw domain_error("confidence must lie in (0, 1)");

    const double z = detail::normal_quantile(0.5 + 0.5 * confidence);
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace stratval
