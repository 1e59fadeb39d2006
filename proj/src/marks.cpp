#include "hawkeslab/marks.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hawkeslab/samplers.hpp"

namespace hawkeslab {

namespace {
const double kInf = std::numeric_limits<double>::infinity();

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}
}  // namespace

MarkDistribution MarkDistribution::deterministic(double value) {
    if (!(value > 0.0)) throw std::invalid_argument("nonpositive-mark: deterministic value must be > 0");
    return MarkDistribution(Kind::deterministic, value, 0.0);
}

MarkDistribution MarkDistribution::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential mark: rate must be > 0");
    return MarkDistribution(Kind::exponential, rate, 0.0);
}

MarkDistribution MarkDistribution::gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::invalid_argument("gamma mark: shape and rate must be > 0");
    return MarkDistribution(Kind::gamma, shape, rate);
}

MarkDistribution MarkDistribution::beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta mark: a and b must be > 0");
    return MarkDistribution(Kind::beta, a, b);
}

MarkDistribution MarkDistribution::pareto(double tail_index, double scale) {
    if (!(tail_index > 1.0))
        throw std::invalid_argument("pareto mark: tail index must be > 1 (finite mean)");
    if (!(scale > 0.0)) throw std::invalid_argument("pareto mark: scale must be > 0");
    return MarkDistribution(Kind::pareto, tail_index, scale);
}

double MarkDistribution::mean() const {
    switch (kind_) {
        case Kind::deterministic: return p0_;
        case Kind::exponential: return 1.0 / p0_;
        case Kind::gamma: return p0_ / p1_;
        case Kind::beta: return p0_ / (p0_ + p1_);
        case Kind::pareto: return p0_ * p1_ / (p0_ - 1.0);
    }
    return 0.0;
}

double MarkDistribution::second_moment() const { return raw_moment(2); }

double MarkDistribution::raw_moment(int order) const {
    if (order < 0) throw std::invalid_argument("raw_moment: order must be >= 0");
    if (order == 0) return 1.0;
    switch (kind_) {
        case Kind::deterministic: return std::pow(p0_, order);
        case Kind::exponential: {
            double m = 1.0;
            for (int i = 1; i <= order; ++i) m *= i / p0_;
            return m;
        }
        case Kind::gamma: {
            double m = 1.0;
            for (int i = 0; i < order; ++i) m *= (p0_ + i) / p1_;
            return m;
        }
        case Kind::beta: {
            double m = 1.0;
            for (int i = 0; i < order; ++i) m *= (p0_ + i) / (p0_ + p1_ + i);
            return m;
        }
        case Kind::pareto:
            if (order >= p0_) return kInf;
            return p0_ * std::pow(p1_, order) / (p0_ - order);
    }
    return 0.0;
}

double MarkDistribution::laplace(double s) const {
    if (s < 0.0) throw std::invalid_argument("laplace: s must be >= 0");
    if (s == 0.0) return 1.0;
    switch (kind_) {
        case Kind::deterministic: return std::exp(-s * p0_);
        case Kind::exponential: return p0_ / (p0_ + s);
        case Kind::gamma: return std::pow(p1_ / (p1_ + s), p0_);
        case Kind::beta: {
            // E[exp(-sB)] over the beta density; the integrand is smooth on [0,1].
            double a = p0_, b = p1_;
            double logc = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
            auto f = [&](double x) {
                if (x <= 0.0 || x >= 1.0) return 0.0;
                return std::exp(logc + (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - s * x);
            };
            return simpson(f, 0.0, 1.0, 2048);
        }
        case Kind::pareto: {
            // B = scale * U^(-1/alpha): integrate exp(-s*scale*u^(-1/alpha)) over (0,1].
            double alpha = p0_, scale = p1_;
            auto f = [&](double u) {
                if (u <= 0.0) return 0.0;
                return std::exp(-s * scale * std::pow(u, -1.0 / alpha));
            };
            return simpson(f, 0.0, 1.0, 4096);
        }
    }
    return 0.0;
}

double MarkDistribution::sample(RngStream& rng) const {
    switch (kind_) {
        case Kind::deterministic: return p0_;
        case Kind::exponential: return sample_exponential(rng, p0_);
        case Kind::gamma: return sample_gamma(rng, p0_, p1_);
        case Kind::beta: return sample_beta(rng, p0_, p1_);
        case Kind::pareto: return sample_pareto(rng, p0_, p1_);
    }
    return 0.0;
}

std::string MarkDistribution::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::deterministic: os << "deterministic(" << p0_ << ")"; break;
        case Kind::exponential: os << "exponential(rate=" << p0_ << ")"; break;
        case Kind::gamma: os << "gamma(shape=" << p0_ << ", rate=" << p1_ << ")"; break;
        case Kind::beta: os << "beta(" << p0_ << ", " << p1_ << ")"; break;
        case Kind::pareto: os << "pareto(alpha=" << p0_ << ", scale=" << p1_ << ")"; break;
    }
    return os.str();
}

}  // namespace hawkeslab
