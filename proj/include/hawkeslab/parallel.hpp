#ifndef HAWKESLAB_PARALLEL_HPP
#define HAWKESLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "hawkeslab/rng.hpp"

namespace hawkeslab {

/// Process-wide default worker count (0 = OpenMP default).
void set_threads(int n);
int threads();

/**
 * Replication driver. Each replication r gets its own substream derived
 * from (master, r) and writes into slot r of the result, so the output is
 * identical for any thread count or schedule. run_replications_serial is
 * the reference implementation; run_replications is the OpenMP kernel.
 */
using RepFn = std::function<std::vector<double>(std::size_t rep, RngStream rng)>;

std::vector<std::vector<double>> run_replications_serial(std::size_t reps, RngStream master,
                                                         const RepFn& fn);
std::vector<std::vector<double>> run_replications(std::size_t reps, RngStream master,
                                                  const RepFn& fn, int num_threads = 0);

/// Substream used for replication rep; exposed so single runs can be replayed.
RngStream replication_stream(RngStream master, std::size_t rep);

}  // namespace hawkeslab

#endif
