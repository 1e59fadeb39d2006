#ifndef HAWKESLAB_KERNEL_HPP
#define HAWKESLAB_KERNEL_HPP

#include <string>
#include <vector>

namespace hawkeslab {

/**
 * Excitation shape h(.) with support on [0,inf), pointwise evaluation,
 * closed-form L1 and sup norms, and partial-mass inversion. All shapes are
 * bounded, which the thinning simulator relies on for local rate bounds.
 */
class Kernel {
public:
    enum class Shape { exponential, power_law, piecewise_constant, zero };

    /// h(t) = scale * exp(-rate * t)
    static Kernel exponential(double rate, double scale);
    /// h(t) = scale * (t + cutoff)^(-exponent), exponent > 1, cutoff > 0
    static Kernel power_law(double exponent, double scale, double cutoff);
    /// values[i] on [prev, breakpoints[i]) with prev = 0 or breakpoints[i-1]; 0 after.
    static Kernel piecewise_constant(std::vector<double> breakpoints,
                                     std::vector<double> values);
    static Kernel zero();

    Shape shape() const { return shape_; }
    bool is_zero() const;

    double operator()(double t) const;      // h(t), 0 for t < 0
    double l1_norm() const;                 // integral of h over [0,inf)
    double sup_norm() const;
    double integral(double x) const;        // integral of h over [0,x]
    double integral_inverse(double mass) const;  // smallest x with integral(x) >= mass
    bool nonincreasing() const;

    // shape parameters (meaning depends on shape)
    double rate() const { return rate_; }
    double scale() const { return scale_; }
    double exponent() const { return exponent_; }
    double cutoff() const { return cutoff_; }
    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& values() const { return values_; }

    std::string describe() const;

private:
    Kernel() = default;

    Shape shape_ = Shape::zero;
    double rate_ = 0.0, scale_ = 0.0;
    double exponent_ = 0.0, cutoff_ = 0.0;
    std::vector<double> breaks_, values_;
};

/// Closed-form L1 norm where available, adaptive quadrature otherwise.
/// Relative error at most 1e-10. Throws for power-law exponents <= 1.
double kernel_l1(const Kernel& kernel);

}  // namespace hawkeslab

#endif
