#ifndef HAWKESLAB_EXPERIMENTS_HPP
#define HAWKESLAB_EXPERIMENTS_HPP

#include <array>
#include <string>
#include <vector>

#include "hawkeslab/model.hpp"
#include "hawkeslab/rng.hpp"
#include "hawkeslab/stats.hpp"

namespace hawkeslab {

/**
 * Empirical verification harness: scaling limits with stretched services,
 * stochastic-ordering and steady-state comparisons, heavy traffic, and
 * tail-index propagation. Every run is deterministic in the master stream
 * and reports the thresholds it applied.
 */

enum class SimEngine { thinning, cluster };

/// Per-replication (N(t), Q(t), Lambda(t)) of a univariate model.
struct StateSamples {
    std::vector<double> N, Q, Lambda;
};
StateSamples sample_state(const NetworkModel& model, double t, std::size_t reps, RngStream master,
                          SimEngine engine = SimEngine::thinning, int threads = 0);

struct FcltResult {
    double T = 0.0;
    double alpha = 0.0;
    std::size_t reps = 0;
    std::vector<double> v_grid;
    std::vector<double> mean;      // of (N(Tv) - mu T v) / sqrt(T)
    std::vector<double> variance;
    std::vector<double> mean_se;
    double centering_mu = 0.0;     // lambda0 / (1 - ||h||)
    double limit_variance = 0.0;   // lambda0 / (1 - ||h||)^3
    double correction = 0.0;       // -lambda0 E[J] ||h|| / (1 - ||h||)^2 at alpha = 1/2
};

/// Delayed model with services stretched by T^alpha, time contracted by T.
/// Checks the kernel-moment and service-mean assumptions before running.
FcltResult fclt_run(const NetworkModel& model, double T, double alpha, std::size_t reps,
                    const std::vector<double>& v_grid, RngStream master, int threads = 0);

struct FllnResult {
    std::vector<double> T_ladder;
    std::vector<double> median_sup_deviation;
    bool decreasing = false;
};
FllnResult flln_check(const NetworkModel& model, const std::vector<double>& T_ladder,
                      std::size_t reps, RngStream master, int threads = 0);

struct DominanceStat {
    std::string stat;            // "N", "Q" or "Lambda"
    double max_violation = 0.0;  // sup_x (F_A - F_B), negative under strict order
    double band = 0.0;           // bootstrap fluctuation band
    bool pass = false;
};
struct DominanceReport {
    std::vector<double> t_grid;
    std::vector<std::array<DominanceStat, 3>> per_t;
    bool pass = false;
};

/// Checks F_A <= F_B pointwise (A dominates B) for N, Q, Lambda at each t,
/// within a bootstrapped one-sided fluctuation band.
DominanceReport dominance_check(const NetworkModel& model_a, const NetworkModel& model_b,
                                const std::vector<double>& t_grid, std::size_t reps,
                                RngStream master, int threads = 0);

struct StationarityResult {
    double t = 0.0;
    KsResult ks_Q, ks_Lambda;
    SampleSummary hawkes_Q, delayed_Q, hawkes_Lambda, delayed_Lambda;
    double stationary_EQ = 0.0, stationary_EL = 0.0;
    bool pass = false;
};

/// Hawkes vs delayed mode at large t: KS on Q and Lambda plus a mean check
/// against the closed-form stationary values.
StationarityResult stationarity_equality_check(const NetworkModel& model, double t,
                                               std::size_t reps, RngStream master,
                                               int threads = 0);

struct HeavyTrafficPoint {
    double rho = 0.0;
    double r = 0.0;
    double t = 0.0;
    double ks_distance = 0.0;
    SampleSummary scaled_Lambda;       // of (1 - rho) Lambda(t)
    double gamma_mean = 0.0, gamma_variance = 0.0;
};
struct HeavyTrafficResult {
    std::vector<HeavyTrafficPoint> points;
    bool distances_decreasing = false;
};

/// Rho ladder approaching 1: (1 - rho) Lambda against the limiting
/// Gamma(2 r lambda0 / b2, 2 r / b2) law; the kernel rate is retuned per
/// rho so that b1 / r = rho.
HeavyTrafficResult heavy_traffic_run(const NetworkModel& base, const std::vector<double>& rho_ladder,
                                     std::size_t reps, RngStream master, int threads = 0);

struct TailResult {
    HillEstimate hill;
    double k_fraction = 0.0;
    std::size_t reps = 0;
    double t = 0.0;
};

/// Hill tail-index of Q(t) samples; heavy-tailed marks should propagate
/// their index to the queue.
TailResult tail_propagation_run(const NetworkModel& model, double t, std::size_t reps,
                                double k_fraction, RngStream master, int threads = 0);

}  // namespace hawkeslab

#endif
