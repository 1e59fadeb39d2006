#ifndef HAWKESLAB_THINNING_SIM_HPP
#define HAWKESLAB_THINNING_SIM_HPP

#include <vector>

#include "hawkeslab/events.hpp"
#include "hawkeslab/model.hpp"
#include "hawkeslab/rng.hpp"

namespace hawkeslab {

/**
 * Intensity-driven simulation via competing clocks: arrival candidates are
 * thinned against the left-endpoint intensity bound (valid because realized
 * kernels are nonincreasing on their active support), departures and
 * reroutes run at the piecewise-constant rates mu_j Q_j and mu_route[i][j]
 * Q_j, and every state change refreshes the bound.
 *
 * Under rate semantics each departure in delayed mode installs a fresh
 * excitation anchor (reroutes do not excite); under scheduled semantics the
 * departure epoch is fixed at arrival and anchors activate there.
 */

/// One excitation anchor: per-target marks, anchored epoch, optional expiry.
struct ExcitationAnchor {
    int source = 0;
    double epoch = 0.0;       // time the mode-shifted kernel starts
    std::vector<double> marks;
    double expiry = 0.0;      // ephemeral cut-off; +inf otherwise
    std::int64_t particle_id = -1;
};

/// Accumulated excitation of every coordinate at time t (before rate maps).
std::vector<double> excitation_at(const std::vector<ExcitationAnchor>& anchors,
                                  const NetworkModel& model, double t);

/// Conditional intensity vector at time t: rate maps applied to the
/// accumulated excitation, lambda0 + x in the linear case.
std::vector<double> conditional_intensity(const std::vector<ExcitationAnchor>& anchors,
                                          const NetworkModel& model, double t);

/// Simulate the network on [0, horizon]. Kernels must be nonincreasing on
/// their active support (throws kernel-not-monotone otherwise).
EventLog simulate_network(const NetworkModel& model, double horizon, RngStream rng);

/// Same engine restricted to models with declared nonlinear rate maps.
EventLog simulate_nonlinear(const NetworkModel& model, double horizon, RngStream rng);

}  // namespace hawkeslab

#endif
