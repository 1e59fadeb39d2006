#ifndef HAWKESLAB_MOMENTS_HPP
#define HAWKESLAB_MOMENTS_HPP

#include <map>
#include <vector>

#include "hawkeslab/model.hpp"

namespace hawkeslab {

/**
 * Moment machinery for Markovian networks with departure-triggered
 * excitation: the joint falling-factorial/raw moments of (Q(t), Lambda(t))
 * solve a linear ODE per order with forcing from lower orders. The
 * univariate case additionally has closed-form eigenvalues and a
 * Lagrange-Sylvester matrix exponential.
 */

/// (q, g): falling-factorial powers of Q and raw powers of Lambda.
struct MomentIndex {
    std::vector<int> q;
    std::vector<int> g;

    int order() const;
    bool operator<(const MomentIndex& o) const;
    bool operator==(const MomentIndex& o) const;
    std::string key() const;  // "q1,...|g1,..."
};

/// All indices of a fixed order; size C(n + 2d - 1, n). For d = 1 the order
/// is (Q^n), (Q^(n-1) L), ..., (L^n), matching the univariate Z vector.
std::vector<MomentIndex> enumerate_moment_indices(int d, int n);

struct MomentSystem {
    std::vector<MomentIndex> indices;        // order-n block
    std::vector<std::vector<double>> A;      // coupling within the order
    // forcing rows: X'_row += coeff * lower_value(index)
    struct ForcingTerm {
        std::size_t row;
        MomentIndex index;  // order < n
        double coeff;
    };
    std::vector<ForcingTerm> forcing;
};

/// Transcribes the compact moment ODE for order n. Requires exponential
/// kernels with a shared per-row rate, delayed mode, rate semantics, and
/// finite mark moments up to n.
MomentSystem assemble_moment_system(const NetworkModel& model, int n);

/// Joint moments per order on a shared time grid, with nodal derivatives
/// kept for interpolation of lower-order forcing.
struct MomentTable {
    int d = 1;
    int max_order = 0;
    std::vector<double> times;
    std::vector<std::vector<MomentIndex>> indices;            // [order]
    std::vector<std::vector<std::vector<double>>> values;     // [order][idx][time]
    std::vector<std::vector<std::vector<double>>> derivs;     // same shape

    /// Cubic Hermite evaluation of one moment at an off-grid time.
    double value_at(const MomentIndex& index, double t) const;
    double value_at_node(const MomentIndex& index, std::size_t node) const;
};

struct MomentSolveOptions {
    std::size_t rk_steps = 4096;  // classical RK4 step count over [0, t_end]
};

/// Solve orders 1..n_max with RK4, threading lower orders into the forcing.
MomentTable solve_moments_transient(const NetworkModel& model, int n_max, double t_end,
                                    const MomentSolveOptions& opts = {});

/// Eigenvalues of the univariate order-n moment matrix A^(n+1):
/// -(n/2)(mu + r) + ((n - 2k)/2) sqrt((mu - r)^2 + 4 mu b1), k = 0..n.
std::vector<double> univariate_eigenvalues(int n, double mu, double r, double b1);

/// exp(A t) through Lagrange-Sylvester interpolation over distinct
/// eigenvalues; throws repeated-eigenvalues below a 1e-9 gap.
std::vector<std::vector<double>> lagrange_sylvester_exp(
    const std::vector<std::vector<double>>& A, const std::vector<double>& eigenvalues, double t);

/// Univariate order-n moment vector at time t from the closed-form solution
/// Z(t) = e^(At) Z(0) + convolution of e^(A(t-s)) with the forcing, the
/// integral evaluated by adaptive Simpson (tol 1e-9).
std::vector<double> transient_Z_univariate(const NetworkModel& model, int n, double t,
                                           const MomentTable& lower_orders);
std::vector<double> transient_Z_univariate(const NetworkModel& model, int n, double t);

/// Stationary (E[Q], E[Lambda]) of the univariate Markovian model:
/// (r l0 / (mu (r - b1)), r l0 / (r - b1)). Requires b1 / r < 1.
std::pair<double, double> stationary_mean(const NetworkModel& model);

/// Joint transform E[z^Q(t) exp(-s' Lambda(t))] by integrating the
/// characteristic ODE system of the transform PDE (RK4, step t/4096).
double characteristics_transform(const NetworkModel& model, double t,
                                 const std::vector<double>& z, const std::vector<double>& s,
                                 std::size_t rk_steps = 4096);

/// Falling-factorial Q-moments to raw moments via Stirling numbers of the
/// second kind; Lambda powers are already raw.
MomentTable factorial_to_raw(const MomentTable& table);

/// Stirling numbers of the second kind S(n, k) for the conversion above.
double stirling_second(int n, int k);

}  // namespace hawkeslab

#endif
