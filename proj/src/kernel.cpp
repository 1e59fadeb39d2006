#include "hawkeslab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hawkeslab {

Kernel Kernel::exponential(double rate, double scale) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential kernel: rate must be > 0");
    if (scale < 0.0) throw std::invalid_argument("exponential kernel: scale must be >= 0");
    Kernel k;
    k.shape_ = Shape::exponential;
    k.rate_ = rate;
    k.scale_ = scale;
    return k;
}

Kernel Kernel::power_law(double exponent, double scale, double cutoff) {
    if (!(exponent > 1.0))
        throw std::invalid_argument("power-law kernel: divergent-integral (exponent must be > 1)");
    if (!(cutoff > 0.0)) throw std::invalid_argument("power-law kernel: cutoff must be > 0");
    if (scale < 0.0) throw std::invalid_argument("power-law kernel: scale must be >= 0");
    Kernel k;
    k.shape_ = Shape::power_law;
    k.exponent_ = exponent;
    k.scale_ = scale;
    k.cutoff_ = cutoff;
    return k;
}

Kernel Kernel::piecewise_constant(std::vector<double> breakpoints, std::vector<double> values) {
    if (breakpoints.size() != values.size() || breakpoints.empty())
        throw std::invalid_argument("piecewise kernel: need matching nonempty breakpoints/values");
    double prev = 0.0;
    for (double b : breakpoints) {
        if (!(b > prev)) throw std::invalid_argument("piecewise kernel: breakpoints must increase from 0");
        prev = b;
    }
    for (double v : values)
        if (v < 0.0) throw std::invalid_argument("piecewise kernel: values must be >= 0");
    Kernel k;
    k.shape_ = Shape::piecewise_constant;
    k.breaks_ = std::move(breakpoints);
    k.values_ = std::move(values);
    return k;
}

Kernel Kernel::zero() {
    Kernel k;
    k.shape_ = Shape::zero;
    return k;
}

bool Kernel::is_zero() const {
    switch (shape_) {
        case Shape::zero: return true;
        case Shape::exponential: return scale_ == 0.0;
        case Shape::power_law: return scale_ == 0.0;
        case Shape::piecewise_constant:
            return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
    }
    return false;
}

double Kernel::operator()(double t) const {
    if (t < 0.0) return 0.0;
    switch (shape_) {
        case Shape::exponential: return scale_ * std::exp(-rate_ * t);
        case Shape::power_law: return scale_ * std::pow(t + cutoff_, -exponent_);
        case Shape::piecewise_constant: {
            double prev = 0.0;
            for (std::size_t i = 0; i < breaks_.size(); ++i) {
                if (t >= prev && t < breaks_[i]) return values_[i];
                prev = breaks_[i];
            }
            return 0.0;
        }
        case Shape::zero: return 0.0;
    }
    return 0.0;
}

double Kernel::l1_norm() const {
    switch (shape_) {
        case Shape::exponential: return scale_ / rate_;
        case Shape::power_law:
            return scale_ * std::pow(cutoff_, 1.0 - exponent_) / (exponent_ - 1.0);
        case Shape::piecewise_constant: {
            double total = 0.0, prev = 0.0;
            for (std::size_t i = 0; i < breaks_.size(); ++i) {
                total += values_[i] * (breaks_[i] - prev);
                prev = breaks_[i];
            }
            return total;
        }
        case Shape::zero: return 0.0;
    }
    return 0.0;
}

double Kernel::sup_norm() const {
    switch (shape_) {
        case Shape::exponential: return scale_;
        case Shape::power_law: return scale_ * std::pow(cutoff_, -exponent_);
        case Shape::piecewise_constant:
            return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
        case Shape::zero: return 0.0;
    }
    return 0.0;
}

double Kernel::integral(double x) const {
    if (x <= 0.0) return 0.0;
    switch (shape_) {
        case Shape::exponential: return scale_ / rate_ * -std::expm1(-rate_ * x);
        case Shape::power_law:
            return scale_ / (exponent_ - 1.0) *
                   (std::pow(cutoff_, 1.0 - exponent_) - std::pow(x + cutoff_, 1.0 - exponent_));
        case Shape::piecewise_constant: {
            double total = 0.0, prev = 0.0;
            for (std::size_t i = 0; i < breaks_.size(); ++i) {
                if (x <= prev) break;
                total += values_[i] * (std::min(x, breaks_[i]) - prev);
                prev = breaks_[i];
            }
            return total;
        }
        case Shape::zero: return 0.0;
    }
    return 0.0;
}

double Kernel::integral_inverse(double mass) const {
    if (mass <= 0.0) return 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    switch (shape_) {
        case Shape::exponential: {
            double frac = mass * rate_ / scale_;
            if (frac >= 1.0) return inf;
            return -std::log1p(-frac) / rate_;
        }
        case Shape::power_law: {
            double base = std::pow(cutoff_, 1.0 - exponent_) - mass * (exponent_ - 1.0) / scale_;
            if (base <= 0.0) return inf;
            return std::pow(base, 1.0 / (1.0 - exponent_)) - cutoff_;
        }
        case Shape::piecewise_constant: {
            double acc = 0.0, prev = 0.0;
            for (std::size_t i = 0; i < breaks_.size(); ++i) {
                double seg = values_[i] * (breaks_[i] - prev);
                if (acc + seg >= mass && values_[i] > 0.0)
                    return prev + (mass - acc) / values_[i];
                acc += seg;
                prev = breaks_[i];
            }
            return inf;
        }
        case Shape::zero: return inf;
    }
    return inf;
}

bool Kernel::nonincreasing() const {
    switch (shape_) {
        case Shape::exponential:
        case Shape::power_law:
        case Shape::zero:
            return true;
        case Shape::piecewise_constant:
            for (std::size_t i = 1; i < values_.size(); ++i)
                if (values_[i] > values_[i - 1]) return false;
            return true;
    }
    return true;
}

std::string Kernel::describe() const {
    std::ostringstream os;
    switch (shape_) {
        case Shape::exponential: os << "exponential(rate=" << rate_ << ", scale=" << scale_ << ")"; break;
        case Shape::power_law:
            os << "power-law(exponent=" << exponent_ << ", scale=" << scale_ << ", cutoff=" << cutoff_ << ")";
            break;
        case Shape::piecewise_constant: os << "piecewise-constant(" << values_.size() << " segments)"; break;
        case Shape::zero: os << "zero"; break;
    }
    return os.str();
}

namespace {

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double kernel_l1(const Kernel& kernel) {
    switch (kernel.shape()) {
        case Kernel::Shape::exponential:
        case Kernel::Shape::piecewise_constant:
        case Kernel::Shape::zero:
            return kernel.l1_norm();
        case Kernel::Shape::power_law: {
            if (!(kernel.exponent() > 1.0))
                throw std::domain_error("kernel_l1: divergent-integral");
            // Map the tail onto (0,1] via t = cutoff*(1/u - 1) and integrate.
            const double p = kernel.exponent(), c = kernel.cutoff(), s = kernel.scale();
            auto g = [&](double u) {
                if (u <= 0.0) return 0.0;
                double t = c * (1.0 / u - 1.0);
                return s * std::pow(t + c, -p) * c / (u * u);
            };
            double exact_scale = kernel.l1_norm();
            return adaptive_simpson(g, 0.0, 1.0, 1e-12 * std::max(1.0, exact_scale));
        }
    }
    return 0.0;
}

}  // namespace hawkeslab
