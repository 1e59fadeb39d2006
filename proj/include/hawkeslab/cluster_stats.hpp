#ifndef HAWKESLAB_CLUSTER_STATS_HPP
#define HAWKESLAB_CLUSTER_STATS_HPP

#include <functional>
#include <vector>

#include "hawkeslab/model.hpp"

namespace hawkeslab {

/// Borel(rho) total-progeny pmf: exp(-rho n) (rho n)^(n-1) / n!.
/// Computed in log space. Requires 0 < rho < 1.
double borel_pmf(int n, double rho);

/// Total cluster size pmf for Gamma(alpha, c) marks and offspring mass rho.
/// Requires (alpha/c) * rho < 1.
double gamma_cluster_pmf(int n, double alpha, double c, double rho);

/// Offspring pmf of a single node of a univariate model: mixed Poisson with
/// parameter B * ||h||_1. Closed forms exist for deterministic, exponential
/// and gamma marks; other kinds throw unsupported-mark-kind.
double offspring_pmf(const NetworkModel& model, int n);

/// Total progeny pmf via the hitting-time identity
/// P(Z=n) = (1/n) P(X_1 + ... + X_n = n-1), evaluated by n-fold discrete
/// convolution of the offspring pmf truncated at K (default 4n). Serves as
/// the brute-force oracle for both closed forms above.
double hitting_time_pmf(const std::function<double(int)>& offspring, int n, int truncation = -1);

}  // namespace hawkeslab

#endif
