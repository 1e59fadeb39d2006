#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hawkeslab/model.hpp"
#include "hawkeslab/rng.hpp"

using namespace hawkeslab;

namespace {

NetworkModel reference_univariate() {
    return NetworkModel::univariate(1.0, Kernel::exponential(2.0, 1.0),
                                    MarkDistribution::deterministic(1.0),
                                    ServiceDistribution::exponential(1.0), 1.0,
                                    ExcitationMode::delayed);
}

NetworkModel two_coordinate(double mu1, double mu2, double route21) {
    NetworkModel m;
    m.d = 2;
    m.lambda0 = {1.0, 0.5};
    m.kernels = {{Kernel::exponential(2.0, 0.6), Kernel::exponential(2.0, 0.6)},
                 {Kernel::exponential(3.0, 0.9), Kernel::exponential(3.0, 0.9)}};
    m.marks = {{MarkDistribution::deterministic(1.0), MarkDistribution::deterministic(1.0)},
               {MarkDistribution::deterministic(1.0), MarkDistribution::deterministic(1.0)}};
    m.services = {ServiceDistribution::exponential(1.0), ServiceDistribution::exponential(1.0)};
    m.mu = {mu1, mu2};
    m.mu_route = {{0.0, 0.0}, {route21, 0.0}};
    m.mode = ExcitationMode::delayed;
    return m;
}

}  // namespace

TEST_CASE("stability: univariate exp kernel radius is b1 ||h||") {
    auto res = stability_check(reference_univariate());
    CHECK(res.spectral_radius == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(res.stable);
}

TEST_CASE("stability: zero kernel has radius zero") {
    NetworkModel m = NetworkModel::univariate(1.0, Kernel::zero(),
                                              MarkDistribution::deterministic(1.0),
                                              ServiceDistribution::exponential(1.0), 1.0,
                                              ExcitationMode::hawkes);
    auto res = stability_check(m);
    CHECK(res.spectral_radius == 0.0);
    CHECK(res.stable);
}

TEST_CASE("stability: symmetric 0.6 entries give radius 1.2, unstable") {
    NetworkModel m = two_coordinate(1.0, 1.0, 0.0);
    // all four entries at 0.6: kernels already give 0.6/2*2=0.3, 0.9/3=0.3; retune
    m.kernels = {{Kernel::exponential(1.0, 0.6), Kernel::exponential(1.0, 0.6)},
                 {Kernel::exponential(1.0, 0.6), Kernel::exponential(1.0, 0.6)}};
    auto res = stability_check(m);
    CHECK(res.spectral_radius == doctest::Approx(1.2).epsilon(1e-9));
    CHECK_FALSE(res.stable);
}

TEST_CASE("stability is monotone in the mark means") {
    RngStream rng = master_stream(314);
    for (int trial = 0; trial < 50; ++trial) {
        double r1 = 0.5 + 2.0 * rng.uniform(), r2 = 0.5 + 2.0 * rng.uniform();
        double s11 = rng.uniform(), s12 = rng.uniform(), s21 = rng.uniform(), s22 = rng.uniform();
        double mean = 0.2 + rng.uniform();
        double factor = 1.0 + 2.0 * rng.uniform();
        NetworkModel m = two_coordinate(1.0, 1.0, 0.0);
        m.kernels = {{Kernel::exponential(r1, s11), Kernel::exponential(r1, s12)},
                     {Kernel::exponential(r2, s21), Kernel::exponential(r2, s22)}};
        auto set_marks = [&](NetworkModel& mm, double v) {
            for (auto& row : mm.marks)
                for (auto& mk : row) mk = MarkDistribution::deterministic(v);
        };
        set_marks(m, mean);
        double before = stability_check(m).spectral_radius;
        set_marks(m, mean * factor);
        double after = stability_check(m).spectral_radius;
        CHECK(after >= before - 1e-12);
    }
}

TEST_CASE("validate: departure reachability") {
    CHECK_NOTHROW(validate_network(reference_univariate()));
    CHECK_NOTHROW(validate_network(two_coordinate(0.0, 1.0, 0.7)));  // 1 -> 2, mu2 > 0
    CHECK_THROWS_WITH_AS(validate_network(two_coordinate(0.0, 0.0, 0.7)),
                         doctest::Contains("unreachable-departure"), std::invalid_argument);
    NetworkModel dead = reference_univariate();
    dead.mu = {0.0};
    CHECK_THROWS(validate_network(dead));
}

TEST_CASE("marks with nonpositive support are rejected at construction") {
    CHECK_THROWS(MarkDistribution::deterministic(0.0));
    CHECK_THROWS(MarkDistribution::deterministic(-1.0));
    CHECK_THROWS(MarkDistribution::pareto(0.9, 1.0));  // infinite mean
}

TEST_CASE("pareto second moment diverges at tail index <= 2") {
    CHECK(std::isinf(MarkDistribution::pareto(1.5, 1.0).second_moment()));
    CHECK(MarkDistribution::pareto(3.0, 1.0).second_moment() ==
          doctest::Approx(3.0 / 1.0));  // alpha scale^2 / (alpha - 2)
    CHECK(MarkDistribution::gamma(2.0, 4.0).second_moment() == doctest::Approx(6.0 / 16.0));
    CHECK(MarkDistribution::beta(3.5, 1.5).mean() == doctest::Approx(0.7));
}

TEST_CASE("rate maps") {
    CHECK(RateMap::linear().apply(1.0, 2.5) == doctest::Approx(3.5));
    CHECK(RateMap::constant().apply(1.0, 99.0) == doctest::Approx(1.0));
    CHECK(RateMap::clamp(10.0).apply(1.0, 100.0) == doctest::Approx(10.0));
    CHECK(RateMap::saturating(3.0).apply(1.0, 100.0) == doctest::Approx(4.0));
    CHECK(RateMap::constant().lipschitz() == 0.0);
}

TEST_CASE("markovian detection and lifetimes") {
    NetworkModel m = reference_univariate();
    CHECK(m.is_markovian());
    CHECK(m.markov_rate(0) == doctest::Approx(2.0));
    CHECK(m.lifetime(0).kind() == ServiceDistribution::Kind::exponential);
    m.kernels[0][0] = Kernel::power_law(2.0, 1.0, 1.0);
    CHECK_FALSE(m.is_markovian());
    m.semantics = ServiceSemantics::scheduled;
    CHECK(m.lifetime(0).kind() == ServiceDistribution::Kind::exponential);  // declared service
}
