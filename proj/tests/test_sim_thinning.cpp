#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hawkeslab/cluster_sim.hpp"
#include "hawkeslab/parallel.hpp"
#include "hawkeslab/stats.hpp"
#include "hawkeslab/thinning_sim.hpp"

using namespace hawkeslab;

namespace {

NetworkModel reference_delayed() {
    return NetworkModel::univariate(1.0, Kernel::exponential(2.0, 1.0),
                                    MarkDistribution::deterministic(1.0),
                                    ServiceDistribution::exponential(1.0), 1.0,
                                    ExcitationMode::delayed);
}

std::vector<double> collect_stat(const NetworkModel& m, double t, std::size_t reps,
                                 std::uint64_t seed, int what /*0=N,1=Q,2=L*/) {
    auto fn = [&](std::size_t, RngStream rng) -> std::vector<double> {
        EventLog log = simulate_network(m, t, rng);
        PathSample p = reconstruct_paths(log, m, {t});
        return {p.N[0][0], p.Q[0][0], p.Lambda[0][0]};
    };
    auto rows = run_replications(reps, master_stream(seed), fn, 0);
    std::vector<double> out(reps);
    for (std::size_t r = 0; r < reps; ++r) out[r] = rows[r][static_cast<std::size_t>(what)];
    return out;
}

}  // namespace

TEST_CASE("conditional intensity: anchors and rate maps") {
    NetworkModel m = reference_delayed();
    m.kernels[0][0] = Kernel::exponential(1.0, 1.0);
    CHECK(conditional_intensity({}, m, 3.0)[0] == doctest::Approx(1.0));
    std::vector<ExcitationAnchor> anchors;
    anchors.push_back({0, 0.0, {2.0}, std::numeric_limits<double>::infinity(), 0});
    CHECK(conditional_intensity(anchors, m, 1.0)[0] ==
          doctest::Approx(1.0 + 2.0 * std::exp(-1.0)));
    m.rate_maps = std::vector<RateMap>{RateMap::clamp(10.0)};
    anchors[0].marks = {1e9};
    CHECK(conditional_intensity(anchors, m, 0.0)[0] == doctest::Approx(10.0));
}

TEST_CASE("zero kernels reduce to M/M/inf") {
    NetworkModel m = reference_delayed();
    m.kernels[0][0] = Kernel::zero();
    auto qs = collect_stat(m, 40.0, 4000, 7, 1);
    SampleSummary s = summarize(qs);
    CHECK(std::fabs(s.mean - 1.0) < 3.0 * s.std_error);
}

TEST_CASE("markovian delayed model approaches its stationary means") {
    NetworkModel m = reference_delayed();  // E[Q] -> 2, E[L] -> 2
    auto qs = collect_stat(m, 60.0, 6000, 8, 1);
    auto ls = collect_stat(m, 60.0, 6000, 9, 2);
    SampleSummary sq = summarize(qs), sl = summarize(ls);
    CHECK(std::fabs(sq.mean - 2.0) < 3.0 * sq.std_error);
    CHECK(std::fabs(sl.mean - 2.0) < 3.0 * sl.std_error);
}

TEST_CASE("pure relay conserves particles") {
    NetworkModel m;
    m.d = 2;
    m.lambda0 = {1.0, 0.0};
    m.kernels = {{Kernel::zero(), Kernel::zero()}, {Kernel::zero(), Kernel::zero()}};
    m.marks = {{MarkDistribution::deterministic(1.0), MarkDistribution::deterministic(1.0)},
               {MarkDistribution::deterministic(1.0), MarkDistribution::deterministic(1.0)}};
    m.services = {ServiceDistribution::exponential(1.0), ServiceDistribution::exponential(1.0)};
    m.mu = {0.0, 1.0};
    m.mu_route = {{0.0, 0.0}, {2.0, 0.0}};  // 1 -> 2 at rate 2 per particle
    m.mode = ExcitationMode::delayed;
    EventLog log = simulate_network(m, 200.0, master_stream(11));
    std::size_t arrivals = 0, departures = 0, reroutes = 0, dep_from_0 = 0;
    for (const Event& e : log.events) {
        if (e.kind == EventKind::arrival) ++arrivals;
        if (e.kind == EventKind::departure) {
            ++departures;
            if (e.coordinate == 0) ++dep_from_0;
        }
        if (e.kind == EventKind::reroute) ++reroutes;
    }
    CHECK(dep_from_0 == 0);          // mu_1 = 0: exits only from coordinate 2
    CHECK(departures <= arrivals);   // conservation with some still in system
    CHECK(reroutes >= departures);   // every exit passed through the relay
    PathSample p = reconstruct_paths(log, m, {50.0, 100.0, 200.0});
    for (int i = 0; i < 2; ++i)
        for (double q : p.Q[i]) CHECK(q >= 0.0);
}

TEST_CASE("nonlinear: constant rate map is a homogeneous Poisson process") {
    NetworkModel m = reference_delayed();
    m.rate_maps = std::vector<RateMap>{RateMap::constant()};
    auto ns = collect_stat(m, 50.0, 4000, 12, 0);
    SampleSummary s = summarize(ns);
    CHECK(std::fabs(s.mean - 50.0) < 3.0 * s.std_error);
    CHECK(s.variance == doctest::Approx(50.0).epsilon(0.15));
}

TEST_CASE("nonlinear: huge saturating cap reproduces the linear path exactly") {
    NetworkModel lin = reference_delayed();
    NetworkModel sat = reference_delayed();
    sat.rate_maps = std::vector<RateMap>{RateMap::saturating(1e12)};
    EventLog a = simulate_network(lin, 30.0, master_stream(13));
    EventLog b = simulate_nonlinear(sat, 30.0, master_stream(13));
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) CHECK(a.events[i].time == b.events[i].time);
}

TEST_CASE("nonlinear: linear rate map agrees with simulate_network in law") {
    NetworkModel m = reference_delayed();
    NetworkModel lin_map = reference_delayed();
    lin_map.rate_maps = std::vector<RateMap>{RateMap::linear()};
    auto a = collect_stat(m, 10.0, 4000, 14, 0);
    auto fn = [&](std::size_t, RngStream rng) -> std::vector<double> {
        EventLog log = simulate_nonlinear(lin_map, 10.0, rng);
        PathSample p = reconstruct_paths(log, lin_map, {10.0});
        return {p.N[0][0]};
    };
    auto rows = run_replications(4000, master_stream(15), fn, 0);
    std::vector<double> b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) b[i] = rows[i][0];
    CHECK(ks_two_sample(a, b).p_value > 0.01);
}

TEST_CASE("increasing kernels are rejected") {
    NetworkModel m = reference_delayed();
    m.kernels[0][0] = Kernel::piecewise_constant({1.0, 2.0}, {0.5, 1.0});
    CHECK_THROWS_WITH_AS(simulate_network(m, 1.0, master_stream(1)),
                         doctest::Contains("kernel-not-monotone"), std::invalid_argument);
}

TEST_CASE("cross-simulator agreement on the reference model") {
    NetworkModel m = reference_delayed();
    auto thin = collect_stat(m, 10.0, 4000, 16, 1);
    auto fn = [&](std::size_t, RngStream rng) -> std::vector<double> {
        EventLog log = simulate_paths_cluster(m, 10.0, rng);
        PathSample p = reconstruct_paths(log, m, {10.0});
        return {p.Q[0][0], p.N[0][0]};
    };
    auto rows = run_replications(4000, master_stream(17), fn, 0);
    std::vector<double> clus(rows.size()), clus_n(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        clus[i] = rows[i][0];
        clus_n[i] = rows[i][1];
    }
    CHECK(ks_two_sample(thin, clus).p_value > 0.01);
    auto thin_n = collect_stat(m, 10.0, 4000, 18, 0);
    CHECK(ks_two_sample(thin_n, clus_n).p_value > 0.01);
}

TEST_CASE("cross-simulator agreement for hawkes and ephemeral modes") {
    for (ExcitationMode mode : {ExcitationMode::hawkes, ExcitationMode::ephemeral}) {
        NetworkModel m = reference_delayed();
        m.mode = mode;
        auto thin = collect_stat(m, 8.0, 3000, 19 + static_cast<int>(mode), 1);
        auto fn = [&](std::size_t, RngStream rng) -> std::vector<double> {
            EventLog log = simulate_paths_cluster(m, 8.0, rng);
            PathSample p = reconstruct_paths(log, m, {8.0});
            return {p.Q[0][0]};
        };
        auto rows = run_replications(3000, master_stream(29 + static_cast<int>(mode)), fn, 0);
        std::vector<double> clus(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) clus[i] = rows[i][0];
        CHECK(ks_two_sample(thin, clus).p_value > 0.01);
    }
}

TEST_CASE("delayed intensity is flat between departures for piecewise kernels") {
    NetworkModel m = reference_delayed();
    m.kernels[0][0] = Kernel::piecewise_constant({100.0}, {0.4});
    EventLog log = simulate_network(m, 12.0, master_stream(33));
    // pick an interval strictly between consecutive events
    for (std::size_t i = 1; i < log.events.size(); ++i) {
        double lo = log.events[i - 1].time, hi = log.events[i].time;
        if (hi - lo < 1e-6) continue;
        double a = lo + 0.25 * (hi - lo), b = lo + 0.75 * (hi - lo);
        PathSample p = reconstruct_paths(log, m, {a, b});
        CHECK(p.Lambda[0][0] == doctest::Approx(p.Lambda[0][1]).epsilon(1e-12));
    }
}
