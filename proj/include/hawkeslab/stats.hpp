#ifndef HAWKESLAB_STATS_HPP
#define HAWKESLAB_STATS_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "hawkeslab/rng.hpp"

// Statistical and special-function utilities shared by the numerical engines,
// the experiment harness and the test oracles.

namespace hawkeslab {

double normal_cdf(double x);
double normal_quantile(double q);

/// Regularized lower incomplete gamma P(a,x); Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// CDF of a Gamma(shape, rate) random variable.
double gamma_cdf(double x, double shape, double rate);

struct SampleSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double std_error = 0.0; // of the mean
};
SampleSummary summarize(const std::vector<double>& xs);

/// Kolmogorov-Smirnov asymptotic tail probability Q_KS.
double ks_tail(double lambda);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};
/// Two-sample KS test; ties are handled by comparing step functions.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);
/// One-sample KS test against a continuous CDF.
KsResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf);
/// KS distance only (no p-value) against a CDF.
double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf);

struct ChiSquareResult {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};
/// Goodness of fit of observed counts against expected counts (same total).
ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected);
/// Homogeneity test across k samples of binned counts (k x bins table).
ChiSquareResult chi_square_homogeneity(const std::vector<std::vector<double>>& counts);

/// Bin integer-valued samples so each pooled bin has expected count >= min_expected.
std::vector<std::vector<double>> bin_counts(const std::vector<std::vector<int>>& samples,
                                            double min_expected = 5.0);

struct HillEstimate {
    double alpha = 0.0;   // tail index estimate
    double ci_low = 0.0;  // bootstrap CI
    double ci_high = 0.0;
    std::size_t k = 0;    // order statistics used
};
/// Hill estimator over the top k = floor(k_fraction * n) order statistics.
HillEstimate hill_tail_index(std::vector<double> samples, double k_fraction,
                             RngStream rng, int bootstrap_rounds = 200);

/// Gauss-Legendre nodes and weights on [0,1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Adaptive Simpson quadrature with absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b, double tol);

/// Empirical CDF evaluated at x (right-continuous), xs must be sorted.
double ecdf(const std::vector<double>& sorted_xs, double x);

}  // namespace hawkeslab

#endif
