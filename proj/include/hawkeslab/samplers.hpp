#ifndef HAWKESLAB_SAMPLERS_HPP
#define HAWKESLAB_SAMPLERS_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "hawkeslab/rng.hpp"

// Distribution samplers on top of RngStream. Hand-rolled so that output is
// identical across platforms and standard-library versions.

namespace hawkeslab {

inline double sample_exponential(RngStream& rng, double rate) {
    return -std::log(rng.uniform()) / rate;
}

inline double sample_normal(RngStream& rng) {
    double u1 = rng.uniform();
    double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

// Marsaglia-Tsang for shape >= 1, with the usual power boost below 1.
inline double sample_gamma(RngStream& rng, double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::invalid_argument("sample_gamma: shape and rate must be positive");
    double boost = 1.0;
    double a = shape;
    if (a < 1.0) {
        boost = std::pow(rng.uniform(), 1.0 / a);
        a += 1.0;
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = sample_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return boost * d * v / rate;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return boost * d * v / rate;
    }
}

inline double sample_beta(RngStream& rng, double a, double b) {
    double x = sample_gamma(rng, a, 1.0);
    double y = sample_gamma(rng, b, 1.0);
    return x / (x + y);
}

inline double sample_pareto(RngStream& rng, double alpha, double scale) {
    return scale * std::pow(rng.uniform(), -1.0 / alpha);
}

inline double sample_lognormal(RngStream& rng, double log_mean, double log_sd) {
    return std::exp(log_mean + log_sd * sample_normal(rng));
}

namespace detail {

// Hoermann's PTRS transformed rejection, for Poisson means >= 10.
inline std::uint64_t poisson_ptrs(RngStream& rng, double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double u = rng.uniform() - 0.5;
        double v = rng.uniform();
        double us = 0.5 - std::fabs(u);
        double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            k * loglam - mean - std::lgamma(k + 1.0)) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

}  // namespace detail

inline std::uint64_t sample_poisson(RngStream& rng, double mean) {
    if (mean < 0.0 || !std::isfinite(mean))
        throw std::invalid_argument("sample_poisson: mean must be finite and nonnegative");
    if (mean == 0.0) return 0;
    if (mean < 10.0) {
        const double limit = std::exp(-mean);
        double prod = rng.uniform();
        std::uint64_t n = 0;
        while (prod > limit) {
            prod *= rng.uniform();
            ++n;
        }
        return n;
    }
    return detail::poisson_ptrs(rng, mean);
}

}  // namespace hawkeslab

#endif
