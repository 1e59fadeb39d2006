#include "hawkeslab/cluster_stats.hpp"

#include <cmath>
#include <stdexcept>

namespace hawkeslab {

double borel_pmf(int n, double rho) {
    if (n < 1) throw std::invalid_argument("borel_pmf: n must be >= 1");
    if (!(rho > 0.0) || !(rho < 1.0)) throw std::invalid_argument("borel_pmf: rho-out-of-range");
    double logp = -rho * n + (n - 1) * std::log(rho * n) - std::lgamma(n + 1.0);
    return std::exp(logp);
}

namespace {
double log_generalized_binomial(double x, double y) {
    return std::lgamma(x + 1.0) - std::lgamma(y + 1.0) - std::lgamma(x - y + 1.0);
}
}  // namespace

double gamma_cluster_pmf(int n, double alpha, double c, double rho) {
    if (n < 1) throw std::invalid_argument("gamma_cluster_pmf: n must be >= 1");
    if (!(alpha > 0.0) || !(c > 0.0) || !(rho > 0.0))
        throw std::invalid_argument("gamma_cluster_pmf: parameters must be positive");
    // criticality (alpha/c)*rho == 1 still yields an a.s. finite progeny
    if ((alpha / c) * rho > 1.0)
        throw std::invalid_argument("gamma_cluster_pmf: supercritical ((alpha/c)*rho > 1)");
    double logp = -std::log(static_cast<double>(n)) +
                  log_generalized_binomial((alpha + 1.0) * n - 2.0, n - 1.0) +
                  alpha * n * std::log(c / (c + rho)) + (n - 1.0) * std::log(rho / (c + rho));
    return std::exp(logp);
}

double offspring_pmf(const NetworkModel& model, int n) {
    if (model.d != 1) throw std::invalid_argument("offspring_pmf: univariate models only");
    if (n < 0) throw std::invalid_argument("offspring_pmf: n must be >= 0");
    const double rho = model.kernels[0][0].l1_norm();
    const MarkDistribution& mark = model.marks[0][0];
    switch (mark.kind()) {
        case MarkDistribution::Kind::deterministic: {
            double m = mark.p0() * rho;
            if (m == 0.0) return n == 0 ? 1.0 : 0.0;
            return std::exp(-m + n * std::log(m) - std::lgamma(n + 1.0));
        }
        case MarkDistribution::Kind::exponential:
        case MarkDistribution::Kind::gamma: {
            // mixed Poisson with gamma mixing is NB(alpha, c/(c+rho))
            double alpha = mark.kind() == MarkDistribution::Kind::exponential ? 1.0 : mark.p0();
            double c = mark.kind() == MarkDistribution::Kind::exponential ? mark.p0() : mark.p1();
            if (rho == 0.0) return n == 0 ? 1.0 : 0.0;
            double logp = log_generalized_binomial(alpha + n - 1.0, static_cast<double>(n)) +
                          alpha * std::log(c / (c + rho)) + n * std::log(rho / (c + rho));
            return std::exp(logp);
        }
        default:
            throw std::invalid_argument("offspring_pmf: unsupported-mark-kind");
    }
}

double hitting_time_pmf(const std::function<double(int)>& offspring, int n, int truncation) {
    if (n < 1) throw std::invalid_argument("hitting_time_pmf: n must be >= 1");
    int K = truncation > 0 ? truncation : 4 * n;
    double mass = 0.0;
    std::vector<double> pmf(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) {
        pmf[k] = offspring(k);
        mass += pmf[k];
    }
    // offspring values above n-1 cannot contribute to P(sum = n-1), so the
    // truncation only bites when it cuts into that support
    if (K < n - 1 && mass < 1.0 - 1e-12)
        throw std::invalid_argument("hitting_time_pmf: truncation-too-small");
    if (n == 1) return pmf[0];
    // n-fold convolution, tracked only up to n-1 (higher sums cannot hit n-1)
    std::vector<double> conv(pmf.begin(), pmf.begin() + std::min<int>(K, n - 1) + 1);
    conv.resize(n, 0.0);
    std::vector<double> next(n, 0.0);
    for (int fold = 1; fold < n; ++fold) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int s = 0; s < n; ++s) {
            if (conv[s] == 0.0) continue;
            int lim = std::min(K, n - 1 - s);
            for (int k = 0; k <= lim; ++k) next[s + k] += conv[s] * pmf[k];
        }
        conv.swap(next);
    }
    return conv[n - 1] / n;
}

}  // namespace hawkeslab
