#ifndef HAWKESLAB_MARKS_HPP
#define HAWKESLAB_MARKS_HPP

#include <string>

#include "hawkeslab/rng.hpp"

namespace hawkeslab {

/**
 * Mark (jump-size) distribution with support in (0,inf). Exposes the first
 * two moments, arbitrary raw moments, the Laplace transform E[exp(-sB)],
 * and a sampler.
 */
class MarkDistribution {
public:
    enum class Kind { deterministic, exponential, gamma, beta, pareto };

    static MarkDistribution deterministic(double value);
    static MarkDistribution exponential(double rate);
    static MarkDistribution gamma(double shape, double rate);
    static MarkDistribution beta(double a, double b);
    static MarkDistribution pareto(double tail_index, double scale);

    Kind kind() const { return kind_; }
    double mean() const;                 // b1, finite for every kind
    double second_moment() const;        // b2, +inf for pareto with alpha <= 2
    double raw_moment(int order) const;  // +inf when the moment diverges
    double laplace(double s) const;      // E[exp(-s B)], s >= 0
    double sample(RngStream& rng) const;

    double p0() const { return p0_; }
    double p1() const { return p1_; }
    std::string describe() const;

private:
    MarkDistribution(Kind kind, double p0, double p1) : kind_(kind), p0_(p0), p1_(p1) {}

    Kind kind_;
    double p0_, p1_;  // (value,-) | (rate,-) | (shape,rate) | (a,b) | (alpha,scale)
};

}  // namespace hawkeslab

#endif
