#ifndef HAWKESLAB_THRESHOLDS_HPP
#define HAWKESLAB_THRESHOLDS_HPP

namespace hawkeslab::thresholds {

// Statistical pass thresholds for the experiment harness and acceptance
// suite. Single tuning point; every result JSON echoes the values it used.

inline constexpr double ks_p = 0.01;             // two-sample equality tests
inline constexpr double chi_square_p = 0.01;     // pmf / homogeneity tests
inline constexpr double tv_distance = 0.01;      // simulated vs closed-form pmf
inline constexpr double se_multiplier = 3.0;     // Monte Carlo mean comparisons
inline constexpr int bootstrap_rounds = 200;     // dominance bands
inline constexpr double band_quantile = 0.99;    // one-sided fluctuation band
inline constexpr double fclt_variance_rel = 0.10;
inline constexpr double fclt_epsilon = 0.1;      // alpha = 1/2 limit holds on [eps, 1]

/// Burn-in heuristic for stationarity experiments: the relaxation time of
/// the first-moment system scales like the spectral gap r - b1.
inline double burn_in(double r, double b1) { return 20.0 / (r - b1); }

}  // namespace hawkeslab::thresholds

#endif
