#include "hawkeslab/services.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hawkeslab/samplers.hpp"
#include "hawkeslab/stats.hpp"

namespace hawkeslab {

ServiceDistribution ServiceDistribution::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential service: rate must be > 0");
    return ServiceDistribution(Kind::exponential, rate, 0.0);
}

ServiceDistribution ServiceDistribution::deterministic(double value) {
    if (value < 0.0) throw std::invalid_argument("deterministic service: value must be >= 0");
    return ServiceDistribution(Kind::deterministic, value, 0.0);
}

ServiceDistribution ServiceDistribution::lognormal(double log_mean, double log_sd) {
    if (!(log_sd > 0.0)) throw std::invalid_argument("lognormal service: log_sd must be > 0");
    return ServiceDistribution(Kind::lognormal, log_mean, log_sd);
}

double ServiceDistribution::mean() const {
    switch (kind_) {
        case Kind::exponential: return 1.0 / p0_;
        case Kind::deterministic: return p0_;
        case Kind::lognormal: return std::exp(p0_ + 0.5 * p1_ * p1_);
    }
    return 0.0;
}

double ServiceDistribution::cdf(double t) const {
    if (t < 0.0) return 0.0;
    switch (kind_) {
        case Kind::exponential: return -std::expm1(-p0_ * t);
        case Kind::deterministic: return t >= p0_ ? 1.0 : 0.0;
        case Kind::lognormal:
            if (t == 0.0) return 0.0;
            return normal_cdf((std::log(t) - p0_) / p1_);
    }
    return 0.0;
}

double ServiceDistribution::survival(double t) const { return 1.0 - cdf(t); }

double ServiceDistribution::quantile(double q) const {
    if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("quantile: q must be in (0,1)");
    switch (kind_) {
        case Kind::exponential: return -std::log1p(-q) / p0_;
        case Kind::deterministic: return p0_;
        case Kind::lognormal: return std::exp(p0_ + p1_ * normal_quantile(q));
    }
    return 0.0;
}

double ServiceDistribution::pdf(double t) const {
    switch (kind_) {
        case Kind::exponential:
            return t < 0.0 ? 0.0 : p0_ * std::exp(-p0_ * t);
        case Kind::deterministic:
            throw std::logic_error("pdf: deterministic service is an atom");
        case Kind::lognormal: {
            if (t <= 0.0) return 0.0;
            double z = (std::log(t) - p0_) / p1_;
            return std::exp(-0.5 * z * z) / (t * p1_ * std::sqrt(2.0 * M_PI));
        }
    }
    return 0.0;
}

double ServiceDistribution::sample(RngStream& rng) const {
    switch (kind_) {
        case Kind::exponential: return sample_exponential(rng, p0_);
        case Kind::deterministic: return p0_;
        case Kind::lognormal: return sample_lognormal(rng, p0_, p1_);
    }
    return 0.0;
}

std::string ServiceDistribution::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::exponential: os << "exponential(rate=" << p0_ << ")"; break;
        case Kind::deterministic: os << "deterministic(" << p0_ << ")"; break;
        case Kind::lognormal: os << "lognormal(" << p0_ << ", " << p1_ << ")"; break;
    }
    return os.str();
}

}  // namespace hawkeslab
