#include "hawkeslab/parallel.hpp"

#include <atomic>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hawkeslab {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) { g_threads.store(n < 0 ? 0 : n); }
int threads() { return g_threads.load(); }

RngStream replication_stream(RngStream master, std::size_t rep) {
    return master.child("rep", static_cast<std::uint64_t>(rep));
}

std::vector<std::vector<double>> run_replications_serial(std::size_t reps, RngStream master,
                                                         const RepFn& fn) {
    std::vector<std::vector<double>> out(reps);
    for (std::size_t r = 0; r < reps; ++r) out[r] = fn(r, replication_stream(master, r));
    return out;
}

std::vector<std::vector<double>> run_replications(std::size_t reps, RngStream master,
                                                  const RepFn& fn, int num_threads) {
    if (num_threads == 0) num_threads = threads();
#ifndef _OPENMP
    (void)num_threads;
    return run_replications_serial(reps, master, fn);
#else
    if (num_threads == 1) return run_replications_serial(reps, master, fn);
    std::vector<std::vector<double>> out(reps);
    std::exception_ptr first_error = nullptr;
    const long long n = static_cast<long long>(reps);
#pragma omp parallel for schedule(dynamic) num_threads(num_threads > 0 ? num_threads : omp_get_max_threads())
    for (long long r = 0; r < n; ++r) {
        try {
            out[static_cast<std::size_t>(r)] =
                fn(static_cast<std::size_t>(r), replication_stream(master, static_cast<std::size_t>(r)));
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
#endif
}

}  // namespace hawkeslab
