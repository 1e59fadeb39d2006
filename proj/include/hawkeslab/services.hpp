#ifndef HAWKESLAB_SERVICES_HPP
#define HAWKESLAB_SERVICES_HPP

#include <string>

#include "hawkeslab/rng.hpp"

namespace hawkeslab {

/// Service-requirement (lifetime) distribution on [0,inf).
class ServiceDistribution {
public:
    enum class Kind { exponential, deterministic, lognormal };

    static ServiceDistribution exponential(double rate);
    static ServiceDistribution deterministic(double value);
    static ServiceDistribution lognormal(double log_mean, double log_sd);

    Kind kind() const { return kind_; }
    double mean() const;
    double cdf(double t) const;       // P(J <= t)
    double survival(double t) const;  // P(J > t)
    double quantile(double q) const;  // q in (0,1)
    double pdf(double t) const;       // density; throws for the deterministic atom
    double sample(RngStream& rng) const;

    double p0() const { return p0_; }
    double p1() const { return p1_; }
    std::string describe() const;

private:
    ServiceDistribution(Kind kind, double p0, double p1) : kind_(kind), p0_(p0), p1_(p1) {}

    Kind kind_;
    double p0_, p1_;
};

}  // namespace hawkeslab

#endif
