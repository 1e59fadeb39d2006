#ifndef HAWKESLAB_CLUSTER_SIM_HPP
#define HAWKESLAB_CLUSTER_SIM_HPP

#include <cstdint>
#include <vector>

#include "hawkeslab/events.hpp"
#include "hawkeslab/model.hpp"
#include "hawkeslab/rng.hpp"

namespace hawkeslab {

/**
 * Exact simulation through the branching cluster representation: immigrants
 * arrive as homogeneous Poisson streams and every event spawns offspring in
 * each target coordinate through an inhomogeneous Poisson process whose
 * intensity is the realized mode-shifted kernel. Covers all three excitation
 * modes; rerouting networks are outside this representation and are rejected.
 */

struct ClusterNode {
    Event event;  // arrival carrying realized service and per-target marks
    std::vector<ClusterNode> children;
};

struct ClusterOptions {
    std::size_t generation_cap = 1000000;  // nodes per cluster
    bool allow_unstable = false;           // skip the stability precondition
};

/// Event times of an inhomogeneous Poisson process on [0, window) whose
/// intensity is the realized kernel mark * h_mode(u). Exact inversion for
/// exponential kernels, thinning against the sup bound otherwise; window
/// may be infinite only on the inversion path.
std::vector<double> sample_offspring_times(ExcitationMode mode, double mark, double service,
                                           const Kernel& kernel, double window, RngStream& rng);

/// One cluster rooted at (birth_time, coordinate); recursion prunes children
/// born after the horizon. Throws generation-cap-exceeded when the cap hits.
ClusterNode simulate_cluster(const NetworkModel& model, int coordinate, double birth_time,
                             double horizon, RngStream rng, const ClusterOptions& opts = {});

/// Number of nodes in the tree, the root included.
std::size_t cluster_size(const ClusterNode& node);

/// Total progeny size sampled without materializing the tree (horizon-free).
std::size_t sample_cluster_total_size(const NetworkModel& model, int coordinate, RngStream rng,
                                      const ClusterOptions& opts = {});

/// Superpose immigrant streams and their clusters into a time-sorted log
/// with arrival and departure events (departure = arrival + service).
EventLog simulate_paths_cluster(const NetworkModel& model, double horizon, RngStream rng,
                                const ClusterOptions& opts = {});

}  // namespace hawkeslab

#endif
