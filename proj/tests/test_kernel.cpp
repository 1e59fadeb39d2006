#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hawkeslab/kernel.hpp"
#include "hawkeslab/rng.hpp"
#include "hawkeslab/stats.hpp"

using namespace hawkeslab;

TEST_CASE("kernel_l1 closed forms") {
    CHECK(kernel_l1(Kernel::exponential(1.0, 0.5)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(kernel_l1(Kernel::zero()) == 0.0);
    CHECK(kernel_l1(Kernel::piecewise_constant({1.0}, {2.0})) == doctest::Approx(2.0));
}

TEST_CASE("kernel_l1 of exponential equals scale/rate for random parameters") {
    RngStream rng = master_stream(2024);
    for (int i = 0; i < 100; ++i) {
        double r = 0.1 + 5.0 * rng.uniform();
        double b = 5.0 * rng.uniform();
        double l1 = kernel_l1(Kernel::exponential(r, b));
        CHECK(std::fabs(l1 - b / r) <= 1e-10 * std::max(1.0, b / r));
    }
}

TEST_CASE("power-law kernel: quadrature matches the closed form, p <= 1 diverges") {
    Kernel k = Kernel::power_law(2.5, 1.3, 0.7);
    double closed = 1.3 * std::pow(0.7, -1.5) / 1.5;
    CHECK(kernel_l1(k) == doctest::Approx(closed).epsilon(1e-10));
    CHECK_THROWS(Kernel::power_law(0.9, 1.0, 1.0));
    CHECK_THROWS(Kernel::power_law(1.0, 1.0, 1.0));
}

TEST_CASE("pointwise evaluation and sup norms") {
    Kernel e = Kernel::exponential(2.0, 3.0);
    CHECK(e(0.0) == doctest::Approx(3.0));
    CHECK(e(1.0) == doctest::Approx(3.0 * std::exp(-2.0)));
    CHECK(e(-0.5) == 0.0);
    CHECK(e.sup_norm() == doctest::Approx(3.0));

    Kernel pw = Kernel::piecewise_constant({0.5, 1.5}, {2.0, 1.0});
    CHECK(pw(0.25) == doctest::Approx(2.0));
    CHECK(pw(1.0) == doctest::Approx(1.0));
    CHECK(pw(2.0) == 0.0);
    CHECK(pw.sup_norm() == doctest::Approx(2.0));
    CHECK(pw.l1_norm() == doctest::Approx(2.0));
    CHECK(pw.nonincreasing());
    CHECK_FALSE(Kernel::piecewise_constant({1.0, 2.0}, {1.0, 3.0}).nonincreasing());
}

TEST_CASE("integral and inverse are consistent") {
    RngStream rng = master_stream(99);
    Kernel shapes[] = {Kernel::exponential(1.7, 2.2), Kernel::power_law(2.2, 1.1, 0.5),
                       Kernel::piecewise_constant({0.4, 1.0, 2.5}, {3.0, 1.5, 0.25})};
    for (const Kernel& k : shapes) {
        for (int i = 0; i < 50; ++i) {
            double mass = rng.uniform() * 0.95 * k.l1_norm();
            double x = k.integral_inverse(mass);
            CHECK(k.integral(x) == doctest::Approx(mass).epsilon(1e-9));
        }
        CHECK(std::isinf(k.integral_inverse(k.l1_norm() * 1.01)));
        // integral agrees with quadrature
        double q = integrate([&](double t) { return k(t); }, 0.0, 2.0, 1e-12);
        CHECK(k.integral(2.0) == doctest::Approx(q).epsilon(1e-8));
    }
}
