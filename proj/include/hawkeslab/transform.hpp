#ifndef HAWKESLAB_TRANSFORM_HPP
#define HAWKESLAB_TRANSFORM_HPP

#include <vector>

#include "hawkeslab/model.hpp"

namespace hawkeslab {

/**
 * Joint Z/Laplace cluster transform on a uniform time grid, and the fixed
 * point machinery that computes the joint transform of (Q(t), Lambda(t)):
 * iterate the cluster-transform operator from the all-ones grid, then fold
 * the immigrant integral over the converged grid.
 */
struct TransformGrid {
    double t = 0.0;                            // grid endpoint
    std::size_t intervals = 0;                 // K; K+1 stored points
    std::vector<std::vector<double>> values;   // [coordinate][grid point]

    double du() const { return t / static_cast<double>(intervals); }
    static TransformGrid ones(int d, double t, std::size_t intervals);
};

struct TransformOptions {
    std::size_t grid_size = 2048;  // default du = t/2048
    double tol = 1e-10;
    int max_iter = 200;
    int service_quad_nodes = 32;   // Gauss-Legendre nodes for E_J
    bool parallel = true;
};

/// One application of the cluster-transform operator at fixed (z, s).
/// Values stay in [0,1]; grid shape must match (throws grid-mismatch).
TransformGrid phi_operator(const TransformGrid& grid, const NetworkModel& model,
                           const std::vector<double>& z, const std::vector<double>& s,
                           const TransformOptions& opts = {});
/// Serial reference for the OpenMP kernel above; identical output.
TransformGrid phi_operator_serial(const TransformGrid& grid, const NetworkModel& model,
                                  const std::vector<double>& z, const std::vector<double>& s,
                                  TransformOptions opts = {});

struct FixedPointResult {
    double value = 1.0;      // E[z^Q(t) exp(-s' Lambda(t))]
    int iterations = 0;
    double residual = 0.0;   // last sup-grid change
    TransformGrid grid;      // converged cluster transform
};

/// Iterates phi from the all-ones grid until the sup change drops below
/// tol; throws no-convergence when max_iter is hit first.
FixedPointResult fixed_point_transform(const NetworkModel& model, double t,
                                       const std::vector<double>& z, const std::vector<double>& s,
                                       const TransformOptions& opts = {});

/// Service-smeared kernel hbar(t) = integral of h(t-w) over the service CDF.
double hbar(const Kernel& kernel, const ServiceDistribution& service, double t);

/// R1 = survival + b1 (R1 * hbar), solved by forward time stepping with a
/// trapezoidal convolution on a uniform grid. Requires b1 ||h||_1 < 1.
std::vector<double> volterra_solve_R1(const NetworkModel& model, const std::vector<double>& grid);

/// R_alpha = b1 (R_alpha * hbar) + C Gamma(1-alpha) * forcing, where the
/// forcing integrates ((h * R1)(u-w))^alpha over the service CDF.
std::vector<double> volterra_solve_Ralpha(const NetworkModel& model,
                                          const std::vector<double>& R1, double alpha, double C,
                                          const std::vector<double>& grid);

}  // namespace hawkeslab

#endif
