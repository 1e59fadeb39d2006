#ifndef HAWKESLAB_MODEL_HPP
#define HAWKESLAB_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "hawkeslab/kernel.hpp"
#include "hawkeslab/marks.hpp"
#include "hawkeslab/services.hpp"

namespace hawkeslab {

/// Where the realized excitation sits relative to a particle's lifetime:
/// hawkes starts at arrival, delayed starts at departure, ephemeral runs
/// from arrival until departure.
enum class ExcitationMode { hawkes, delayed, ephemeral };

std::string to_string(ExcitationMode mode);
ExcitationMode excitation_mode_from_string(const std::string& s);

/// How departures are produced: "rate" draws them at rate mu_j * Q_j
/// (memoryless network dynamics, allows rerouting); "scheduled" draws the
/// service requirement at arrival and fixes the departure epoch.
enum class ServiceSemantics { rate, scheduled };

std::string to_string(ServiceSemantics s);
ServiceSemantics service_semantics_from_string(const std::string& s);

/// Nondecreasing Lipschitz rate map applied to the accumulated excitation.
struct RateMap {
    enum class Kind { linear, constant, clamp, saturating };

    Kind kind = Kind::linear;
    double cap = 0.0;

    static RateMap linear() { return {Kind::linear, 0.0}; }
    static RateMap constant() { return {Kind::constant, 0.0}; }
    /// min(lambda0 + x, cap)
    static RateMap clamp(double cap) { return {Kind::clamp, cap}; }
    /// lambda0 + min(x, cap)
    static RateMap saturating(double cap) { return {Kind::saturating, cap}; }

    double apply(double lambda0, double x) const;
    double lipschitz() const { return kind == Kind::constant ? 0.0 : 1.0; }
    bool is_linear() const { return kind == Kind::linear; }
};

/**
 * Full parameterization of a d-dimensional self-exciting network:
 * baseline rates, d x d excitation kernels and mark distributions,
 * service distributions, departure and rerouting rates, excitation mode,
 * and optional nonlinear rate maps. Immutable in spirit: construct, then
 * share freely across threads.
 */
struct NetworkModel {
    int d = 1;
    std::vector<double> lambda0;                      // baseline rates, size d
    std::vector<std::vector<Kernel>> kernels;         // [i][j]: effect of j on i
    std::vector<std::vector<MarkDistribution>> marks; // [i][j]
    std::vector<ServiceDistribution> services;        // per coordinate
    std::vector<double> mu;                           // departure rates
    std::vector<std::vector<double>> mu_route;        // [i][j]: rate j -> i
    ExcitationMode mode = ExcitationMode::hawkes;
    ServiceSemantics semantics = ServiceSemantics::rate;
    std::optional<std::vector<RateMap>> rate_maps;    // absent => linear

    bool is_linear() const;
    bool has_routing() const;
    /// Total service rate mu_j + sum_i mu_route[i][j] of coordinate j.
    double total_service_rate(int j) const;
    RateMap rate_map(int i) const;

    /// Realized lifetime distribution of coordinate j: the declared service
    /// distribution under scheduled semantics, Exp(mu_j) under rate
    /// semantics (departures are memoryless).
    ServiceDistribution lifetime(int j) const;

    /// Markovian iff every kernel in row i is exponential with one shared
    /// rate r_i (zero kernels are allowed anywhere).
    bool is_markovian() const;
    /// Decay rate r_i of row i; requires is_markovian().
    double markov_rate(int i) const;

    /// Convenience builder for the univariate case.
    static NetworkModel univariate(double lambda0, Kernel kernel, MarkDistribution mark,
                                   ServiceDistribution service, double mu,
                                   ExcitationMode mode,
                                   ServiceSemantics semantics = ServiceSemantics::rate);
};

/// Throws (unreachable-departure, nonpositive-mark, invalid-kernel, ...)
/// unless every type invariant and the departure-reachability condition hold.
void validate_network(const NetworkModel& model);

struct StabilityResult {
    double spectral_radius = 0.0;
    bool stable = false;
};

/// Branching matrix entries L_i * b1(i,j) * ||h_ij||_1.
std::vector<std::vector<double>> branching_matrix(const NetworkModel& model);

/// Spectral radius of the branching matrix via power iteration
/// (tolerance 1e-12, at most 1e4 iterations); stable iff radius < 1.
StabilityResult stability_check(const NetworkModel& model);

}  // namespace hawkeslab

#endif
