#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "hawkeslab/rng.hpp"
#include "hawkeslab/samplers.hpp"
#include "hawkeslab/stats.hpp"

using namespace hawkeslab;

TEST_CASE("streams are deterministic and reproducible") {
    RngStream a = master_stream(42);
    RngStream b = master_stream(42);
    for (int i = 0; i < 100; ++i) CHECK(a() == b());
    RngStream c = master_stream(43);
    int diff = 0;
    RngStream a2 = master_stream(42);
    for (int i = 0; i < 100; ++i)
        if (a2() != c()) ++diff;
    CHECK(diff > 90);
}

TEST_CASE("child streams do not collide") {
    RngStream root = master_stream(7);
    std::set<std::uint64_t> firsts;
    for (std::uint64_t i = 0; i < 2000; ++i) {
        RngStream ch = root.child("rep", i);
        firsts.insert(ch());
    }
    CHECK(firsts.size() == 2000);
    // nested derivation differs from sibling derivation
    CHECK(root.child("a").child("b")() != root.child("b").child("a")());
}

TEST_CASE("uniforms look uniform") {
    RngStream rng = master_stream(1);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        sum += u;
        sumsq += u * u;
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    CHECK(std::fabs(mean - 0.5) < 0.005);
    CHECK(std::fabs(var - 1.0 / 12.0) < 0.005);
}

TEST_CASE("poisson sampler matches its pmf across both regimes") {
    for (double mean : {3.0, 30.0}) {
        RngStream rng = master_stream(11).child("pois", static_cast<std::uint64_t>(mean));
        const int n = 100000;
        std::vector<std::vector<int>> samples(1);
        for (int i = 0; i < n; ++i)
            samples[0].push_back(static_cast<int>(sample_poisson(rng, mean)));
        int maxv = 0;
        for (int v : samples[0]) maxv = std::max(maxv, v);
        std::vector<double> observed(maxv + 1, 0.0), expected(maxv + 1, 0.0);
        for (int v : samples[0]) observed[v] += 1.0;
        double tail = n;
        for (int k = 0; k < maxv; ++k) {
            expected[k] = n * std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
            tail -= expected[k];
        }
        expected[maxv] = std::max(tail, 1e-9);
        // pool sparse bins
        std::vector<double> obs_p, exp_p;
        double oa = 0.0, ea = 0.0;
        for (int k = 0; k <= maxv; ++k) {
            oa += observed[k];
            ea += expected[k];
            if (ea >= 5.0) {
                obs_p.push_back(oa);
                exp_p.push_back(ea);
                oa = ea = 0.0;
            }
        }
        if (ea > 0.0 && !exp_p.empty()) {
            obs_p.back() += oa;
            exp_p.back() += ea;
        }
        auto res = chi_square_gof(obs_p, exp_p);
        CHECK(res.p_value > 0.001);
    }
}

TEST_CASE("gamma and exponential samplers have the right first two moments") {
    RngStream rng = master_stream(5);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = sample_gamma(rng, 3.5, 2.0);
        sum += x;
        sumsq += x * x;
    }
    CHECK(std::fabs(sum / n - 1.75) < 0.01);                      // shape/rate
    CHECK(std::fabs(sumsq / n - (0.875 + 1.75 * 1.75)) < 0.05);   // var + mean^2

    sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_exponential(rng, 4.0);
    CHECK(std::fabs(sum / n - 0.25) < 0.005);
}
