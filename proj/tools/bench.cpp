// Benchmark: OpenMP replication/operator kernels against their serial
// reference implementations.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "hawkeslab/cluster_sim.hpp"
#include "hawkeslab/parallel.hpp"
#include "hawkeslab/thinning_sim.hpp"
#include "hawkeslab/transform.hpp"

using namespace hawkeslab;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

NetworkModel reference_model() {
    return NetworkModel::univariate(1.0, Kernel::exponential(2.0, 1.0),
                                    MarkDistribution::deterministic(1.0),
                                    ServiceDistribution::exponential(1.0), 1.0,
                                    ExcitationMode::delayed);
}

void bench_replications(const char* name, std::size_t reps, bool cluster) {
    NetworkModel m = reference_model();
    auto fn = [&](std::size_t, RngStream rng) -> std::vector<double> {
        EventLog log = cluster ? simulate_paths_cluster(m, 50.0, rng)
                               : simulate_network(m, 50.0, rng);
        return {static_cast<double>(log.events.size())};
    };
    RngStream master = master_stream(7);
    auto t0 = clock_type::now();
    auto serial = run_replications_serial(reps, master, fn);
    double ts = seconds_since(t0);
    t0 = clock_type::now();
    auto parallel = run_replications(reps, master, fn, 0);
    double tp = seconds_since(t0);
    bool same = serial == parallel;
    std::printf("%-28s serial %7.3fs   openmp %7.3fs   speedup %5.2fx   identical %s\n", name, ts,
                tp, ts / tp, same ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    int threads = argc > 1 ? std::atoi(argv[1]) : 0;
    set_threads(threads);
    std::printf("replication and operator kernels, threads=%d (0 = OpenMP default)\n", threads);

    bench_replications("thinning replications", 2000, false);
    bench_replications("cluster replications", 2000, true);

    // transform operator grid kernel
    NetworkModel m = reference_model();
    TransformGrid grid = TransformGrid::ones(1, 5.0, 2048);
    TransformOptions opts;
    auto t0 = clock_type::now();
    TransformGrid a = grid;
    for (int i = 0; i < 10; ++i) a = phi_operator_serial(a, m, {0.5}, {0.3}, opts);
    double ts = seconds_since(t0);
    t0 = clock_type::now();
    TransformGrid b = grid;
    for (int i = 0; i < 10; ++i) b = phi_operator(b, m, {0.5}, {0.3}, opts);
    double tp = seconds_since(t0);
    bool same = a.values == b.values;
    std::printf("%-28s serial %7.3fs   openmp %7.3fs   speedup %5.2fx   identical %s\n",
                "phi operator x10", ts, tp, ts / tp, same ? "yes" : "NO");
    return 0;
}
