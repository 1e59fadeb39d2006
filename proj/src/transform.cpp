#include "hawkeslab/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hawkeslab/stats.hpp"

namespace hawkeslab {

TransformGrid TransformGrid::ones(int d, double t, std::size_t intervals) {
    TransformGrid g;
    g.t = t;
    g.intervals = intervals;
    g.values.assign(static_cast<std::size_t>(d),
                    std::vector<double>(intervals + 1, 1.0));
    return g;
}

namespace {

// Mark Laplace transform, tabulated when only a quadrature form exists.
class LaplaceEval {
public:
    LaplaceEval(const MarkDistribution& mark, double arg_max) : mark_(&mark) {
        using K = MarkDistribution::Kind;
        tabulated_ = mark.kind() == K::beta || mark.kind() == K::pareto;
        if (tabulated_) {
            arg_max_ = std::max(arg_max, 1e-12);
            table_.resize(kTablePoints + 1);
            for (std::size_t i = 0; i <= kTablePoints; ++i)
                table_[i] = mark.laplace(arg_max_ * static_cast<double>(i) / kTablePoints);
        }
    }

    double operator()(double s) const {
        if (s <= 0.0) return 1.0;
        if (!tabulated_) return mark_->laplace(s);
        double pos = s / arg_max_ * kTablePoints;
        if (pos >= kTablePoints) return table_.back();
        std::size_t lo = static_cast<std::size_t>(pos);
        double frac = pos - static_cast<double>(lo);
        return table_[lo] * (1.0 - frac) + table_[lo + 1] * frac;
    }

private:
    static constexpr std::size_t kTablePoints = 4096;
    const MarkDistribution* mark_;
    bool tabulated_ = false;
    double arg_max_ = 1.0;
    std::vector<double> table_;
};

double lerp_grid(const std::vector<double>& vals, double du, double y) {
    if (y <= 0.0) return vals.front();
    double pos = y / du;
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= vals.size()) return vals.back();
    double frac = pos - static_cast<double>(lo);
    return vals[lo] * (1.0 - frac) + vals[lo + 1] * frac;
}

// Characteristic inverse length of a kernel, used to size quadrature panels.
double variation_rate(const Kernel& k) {
    switch (k.shape()) {
        case Kernel::Shape::exponential: return k.rate();
        case Kernel::Shape::power_law: return k.exponent() / k.cutoff();
        case Kernel::Shape::piecewise_constant: {
            double prev = 0.0, shortest = k.breakpoints().back();
            for (double b : k.breakpoints()) {
                shortest = std::min(shortest, b - prev);
                prev = b;
            }
            return shortest > 0.0 ? 1.0 / shortest : 1.0;
        }
        case Kernel::Shape::zero: return 0.0;
    }
    return 1.0;
}

const std::vector<double>& panel_nodes(int n, bool weights) {
    thread_local int cached_n = -1;
    thread_local std::vector<double> nodes, w;
    if (cached_n != n) {
        gauss_legendre_01(n, nodes, w);
        cached_n = n;
    }
    return weights ? w : nodes;
}

// Expectation of fn(J) against the continuous service density over [0, hi],
// by Gauss-Legendre panels in J-space sized to rate_scale. Deterministic
// services are handled by the callers as atoms.
template <typename Fn>
double service_expect(const ServiceDistribution& life, double hi, double rate_scale, int nodes,
                      Fn&& fn) {
    if (hi <= 0.0) return 0.0;
    const auto& xs = panel_nodes(nodes, false);
    const auto& ws = panel_nodes(nodes, true);
    int panels = 1 + static_cast<int>(hi * std::max(rate_scale, 1e-6) / 2.5);
    panels = std::min(panels, 24);
    const double width = hi / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        double lo = p * width;
        double panel_acc = 0.0;
        for (int q = 0; q < nodes; ++q) {
            double J = lo + width * xs[static_cast<std::size_t>(q)];
            panel_acc += ws[static_cast<std::size_t>(q)] * life.pdf(J) * fn(J);
        }
        acc += panel_acc * width;
    }
    return acc;
}

struct PhiWorkspace {
    int d;
    std::size_t K;
    double du;
    std::vector<std::vector<std::vector<double>>> hvals;  // [i][j][k]
    std::vector<std::vector<double>> surv;                // [j][k]
    std::vector<std::vector<double>> cdf;                 // [j][k]
    std::vector<std::vector<LaplaceEval>> beta;           // [i][j]
    std::vector<ServiceDistribution> life;
    std::vector<double> rate_scale;                       // per source coordinate
};

PhiWorkspace make_workspace(const NetworkModel& model, const TransformGrid& grid,
                            const std::vector<double>& s) {
    PhiWorkspace w{model.d, grid.intervals, grid.du(), {}, {}, {}, {}, {}, {}};
    const std::size_t K = w.K;
    w.hvals.assign(model.d, std::vector<std::vector<double>>(model.d));
    w.beta.reserve(model.d);
    for (int i = 0; i < model.d; ++i) {
        std::vector<LaplaceEval> row;
        row.reserve(model.d);
        for (int j = 0; j < model.d; ++j) {
            auto& hk = w.hvals[i][j];
            hk.resize(K + 1);
            for (std::size_t k = 0; k <= K; ++k)
                hk[k] = model.kernels[i][j](static_cast<double>(k) * w.du);
            double arg_max =
                s[static_cast<std::size_t>(i)] * model.kernels[i][j].sup_norm() +
                model.kernels[i][j].l1_norm() + 1.0;
            row.emplace_back(model.marks[i][j], arg_max);
        }
        w.beta.push_back(std::move(row));
    }
    w.surv.assign(model.d, std::vector<double>(K + 1));
    w.cdf.assign(model.d, std::vector<double>(K + 1));
    w.rate_scale.assign(model.d, 0.0);
    for (int j = 0; j < model.d; ++j) {
        w.life.push_back(model.lifetime(j));
        for (std::size_t k = 0; k <= K; ++k) {
            double u = static_cast<double>(k) * w.du;
            w.cdf[j][k] = w.life[j].cdf(u);
            w.surv[j][k] = 1.0 - w.cdf[j][k];
        }
        double rs = 1.0 / std::max(w.life[j].mean(), 1e-9);
        for (int i = 0; i < model.d; ++i) rs = std::max(rs, variation_rate(model.kernels[i][j]));
        w.rate_scale[j] = rs;
    }
    return w;
}

// Trapezoidal convolution conv(k) = sum over h(v) * (1 - J_i(u_k - v)) dv.
void convolve(const std::vector<double>& h, const std::vector<double>& one_minus, double du,
              std::vector<double>& out, bool parallel) {
    const std::ptrdiff_t K = static_cast<std::ptrdiff_t>(h.size()) - 1;
    out.assign(h.size(), 0.0);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t k = 1; k <= K; ++k) {
        double acc = 0.5 * (h[0] * one_minus[k] + h[k] * one_minus[0]);
        for (std::ptrdiff_t m = 1; m < k; ++m) acc += h[m] * one_minus[k - m];
        out[k] = acc * du;
    }
}

TransformGrid phi_apply(const TransformGrid& grid, const NetworkModel& model,
                        const std::vector<double>& z, const std::vector<double>& s,
                        const TransformOptions& opts, bool parallel) {
    const int d = model.d;
    if (grid.values.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("phi_operator: grid-mismatch");
    for (const auto& row : grid.values)
        if (row.size() != grid.intervals + 1)
            throw std::invalid_argument("phi_operator: grid-mismatch");
    if (z.size() != static_cast<std::size_t>(d) || s.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("phi_operator: argument dimension mismatch");
    for (int j = 0; j < d; ++j) {
        if (!(z[j] >= 0.0 && z[j] <= 1.0)) throw std::invalid_argument("phi_operator: z in [0,1]");
        if (!(s[j] >= 0.0)) throw std::invalid_argument("phi_operator: s >= 0");
    }
    if (!model.is_linear())
        throw std::invalid_argument("phi_operator: linear models only");

    PhiWorkspace w = make_workspace(model, grid, s);
    const std::size_t K = w.K;
    const double du = w.du;
    const int quad_nodes = opts.service_quad_nodes;

    std::vector<std::vector<double>> one_minus(d, std::vector<double>(K + 1));
    for (int i = 0; i < d; ++i)
        for (std::size_t k = 0; k <= K; ++k) one_minus[i][k] = 1.0 - grid.values[i][k];

    // conv[i][j](y) = integral of h_ij(v) (1 - J_i(y - v)) dv over [0, y]
    std::vector<std::vector<std::vector<double>>> conv(d, std::vector<std::vector<double>>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) convolve(w.hvals[i][j], one_minus[i], du, conv[i][j], parallel);

    TransformGrid out;
    out.t = grid.t;
    out.intervals = K;
    out.values.assign(d, std::vector<double>(K + 1, 1.0));

    for (int j = 0; j < d; ++j) {
        auto& dest = out.values[j];
        const double zj = z[j];
        const bool det_service = w.life[j].kind() == ServiceDistribution::Kind::deterministic;
#pragma omp parallel for schedule(static) if (parallel)
        for (std::ptrdiff_t kk = 0; kk <= static_cast<std::ptrdiff_t>(K); ++kk) {
            const std::size_t k = static_cast<std::size_t>(kk);
            const double u = static_cast<double>(k) * du;
            const double S = w.surv[j][k];
            const double F = w.cdf[j][k];
            double value = 0.0;
            switch (model.mode) {
                case ExcitationMode::hawkes: {
                    double prod = 1.0;
                    for (int i = 0; i < d; ++i)
                        prod *= w.beta[i][j](s[i] * w.hvals[i][j][k] + conv[i][j][k]);
                    value = (zj * S + F) * prod;
                    break;
                }
                case ExcitationMode::delayed: {
                    // J > u contributes z_j; J <= u sees the kernel aged u - J
                    auto integrand = [&](double J) {
                        double y = u - J;
                        if (y < 0.0) y = 0.0;
                        double prod = 1.0;
                        for (int i = 0; i < d; ++i) {
                            double arg =
                                s[i] * model.kernels[i][j](y) + lerp_grid(conv[i][j], du, y);
                            prod *= w.beta[i][j](arg);
                        }
                        return prod;
                    };
                    value = zj * S;
                    if (det_service) {
                        if (w.life[j].p0() <= u) value += integrand(w.life[j].p0());
                    } else if (F > 0.0) {
                        value += service_expect(w.life[j], u, w.rate_scale[j], quad_nodes,
                                                integrand);
                    }
                    break;
                }
                case ExcitationMode::ephemeral: {
                    // prefix(y) = excitation integral truncated at age y
                    std::vector<std::vector<double>> prefix(
                        static_cast<std::size_t>(d), std::vector<double>(k + 1, 0.0));
                    for (int i = 0; i < d; ++i) {
                        const auto& h = w.hvals[i][j];
                        const auto& om = one_minus[i];
                        auto& pre = prefix[static_cast<std::size_t>(i)];
                        for (std::size_t m = 1; m <= k; ++m)
                            pre[m] = pre[m - 1] +
                                     0.5 * du * (h[m - 1] * om[k - m + 1] + h[m] * om[k - m]);
                    }
                    auto truncated = [&](int i, double y) {
                        const auto& pre = prefix[static_cast<std::size_t>(i)];
                        if (y <= 0.0) return 0.0;
                        if (y >= u) return pre[k];
                        double pos = y / du;
                        std::size_t lo = static_cast<std::size_t>(pos);
                        if (lo + 1 > k) return pre[k];
                        double frac = pos - static_cast<double>(lo);
                        return pre[lo] * (1.0 - frac) + pre[lo + 1] * frac;
                    };
                    // J > u: excitation runs on all of [0, u], root still queued
                    double prod_full = 1.0;
                    for (int i = 0; i < d; ++i)
                        prod_full *= w.beta[i][j](s[i] * w.hvals[i][j][k] + prefix[i][k]);
                    value = zj * S * prod_full;
                    auto integrand = [&](double J) {
                        double prod = 1.0;
                        for (int i = 0; i < d; ++i) prod *= w.beta[i][j](truncated(i, J));
                        return prod;
                    };
                    if (det_service) {
                        if (w.life[j].p0() <= u) value += integrand(w.life[j].p0());
                    } else if (F > 0.0) {
                        value += service_expect(w.life[j], u, w.rate_scale[j], quad_nodes,
                                                integrand);
                    }
                    break;
                }
            }
            dest[k] = std::clamp(value, 0.0, 1.0);
        }
    }
    return out;
}

}  // namespace

TransformGrid phi_operator(const TransformGrid& grid, const NetworkModel& model,
                           const std::vector<double>& z, const std::vector<double>& s,
                           const TransformOptions& opts) {
    return phi_apply(grid, model, z, s, opts, opts.parallel);
}

TransformGrid phi_operator_serial(const TransformGrid& grid, const NetworkModel& model,
                                  const std::vector<double>& z, const std::vector<double>& s,
                                  TransformOptions opts) {
    return phi_apply(grid, model, z, s, opts, false);
}

FixedPointResult fixed_point_transform(const NetworkModel& model, double t,
                                       const std::vector<double>& z, const std::vector<double>& s,
                                       const TransformOptions& opts) {
    validate_network(model);
    if (!(t >= 0.0)) throw std::invalid_argument("fixed_point_transform: t must be >= 0");
    auto stab = stability_check(model);
    if (!stab.stable)
        throw std::runtime_error("fixed_point_transform: unstable model (radius " +
                                 std::to_string(stab.spectral_radius) + ")");
    FixedPointResult res;
    if (t == 0.0) {
        double v = 0.0;
        for (int j = 0; j < model.d; ++j) v += model.lambda0[j] * s[j];
        res.value = std::exp(-v);
        return res;
    }

    // Deterministic services put an atom in the integrand; align the grid so
    // the atom lands on grid points when t is a multiple of the service.
    std::size_t K = opts.grid_size;
    for (int j = 0; j < model.d; ++j) {
        auto life = model.lifetime(j);
        if (life.kind() == ServiceDistribution::Kind::deterministic && life.p0() > 0.0) {
            double ratio = t / life.p0();
            if (std::fabs(ratio - std::round(ratio)) < 1e-9 && ratio >= 1.0) {
                double per = std::max(1.0, std::round(static_cast<double>(K) / ratio));
                K = static_cast<std::size_t>(per * ratio + 0.5);
            }
            break;
        }
    }

    TransformGrid cur = TransformGrid::ones(model.d, t, K);
    double residual = 0.0;
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        TransformGrid next = phi_apply(cur, model, z, s, opts, opts.parallel);
        residual = 0.0;
        for (int j = 0; j < model.d; ++j)
            for (std::size_t k = 0; k <= K; ++k)
                residual = std::max(residual, std::fabs(next.values[j][k] - cur.values[j][k]));
        cur = std::move(next);
        if (residual < opts.tol) break;
    }
    if (residual >= opts.tol)
        throw std::runtime_error("fixed_point_transform: no-convergence (residual " +
                                 std::to_string(residual) + ")");

    double log_value = 0.0;
    const double du = cur.du();
    for (int j = 0; j < model.d; ++j) {
        double integral = 0.5 * (cur.values[j].front() + cur.values[j].back());
        for (std::size_t k = 1; k < K; ++k) integral += cur.values[j][k];
        integral *= du;
        log_value += -model.lambda0[j] * (t + s[j] - integral);
    }
    res.value = std::exp(log_value);
    res.iterations = it + 1;
    res.residual = residual;
    res.grid = std::move(cur);
    return res;
}

double hbar(const Kernel& kernel, const ServiceDistribution& service, double t) {
    if (t <= 0.0) return 0.0;
    if (service.kind() == ServiceDistribution::Kind::deterministic) {
        double v = service.p0();
        return t >= v ? kernel(t - v) : 0.0;
    }
    double scale = kernel.sup_norm();
    if (scale <= 0.0) return 0.0;
    return integrate([&](double w) { return kernel(t - w) * service.pdf(w); }, 0.0, t,
                     1e-13 * std::max(1.0, scale));
}

namespace {

void check_uniform_grid(const std::vector<double>& grid) {
    if (grid.size() < 2 || grid[0] != 0.0)
        throw std::invalid_argument("volterra: grid must start at 0 with >= 2 points");
    double du = grid[1] - grid[0];
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (std::fabs(grid[k] - grid[k - 1] - du) > 1e-9 * du)
            throw std::invalid_argument("volterra: grid must be uniform");
}

}  // namespace

std::vector<double> volterra_solve_R1(const NetworkModel& model, const std::vector<double>& grid) {
    if (model.d != 1) throw std::invalid_argument("volterra_solve_R1: univariate models only");
    check_uniform_grid(grid);
    const Kernel& h = model.kernels[0][0];
    const double b1 = model.marks[0][0].mean();
    if (!(b1 * h.l1_norm() < 1.0))
        throw std::invalid_argument("volterra_solve_R1: instability (b1 ||h||_1 >= 1)");
    const ServiceDistribution life = model.lifetime(0);
    const double du = grid[1] - grid[0];
    const std::size_t K = grid.size();

    std::vector<double> hb(K), surv(K);
    for (std::size_t k = 0; k < K; ++k) {
        hb[k] = hbar(h, life, grid[k]);
        surv[k] = life.survival(grid[k]);
    }
    std::vector<double> R(K, 0.0);
    R[0] = surv[0];  // survival at 0 is 1
    const double denom = 1.0 - 0.5 * b1 * du * hb[0];
    for (std::size_t k = 1; k < K; ++k) {
        double acc = 0.5 * hb[k] * R[0];
        for (std::size_t m = 1; m < k; ++m) acc += hb[m] * R[k - m];
        R[k] = (surv[k] + b1 * du * acc) / denom;
    }
    return R;
}

std::vector<double> volterra_solve_Ralpha(const NetworkModel& model,
                                          const std::vector<double>& R1, double alpha, double C,
                                          const std::vector<double>& grid) {
    if (model.d != 1) throw std::invalid_argument("volterra_solve_Ralpha: univariate models only");
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::invalid_argument("volterra_solve_Ralpha: alpha must lie in (1,2)");
    if (R1.size() != grid.size())
        throw std::invalid_argument("volterra_solve_Ralpha: R1/grid size mismatch");
    check_uniform_grid(grid);
    const Kernel& h = model.kernels[0][0];
    const double b1 = model.marks[0][0].mean();
    if (!(b1 * h.l1_norm() < 1.0))
        throw std::invalid_argument("volterra_solve_Ralpha: instability (b1 ||h||_1 >= 1)");
    const ServiceDistribution life = model.lifetime(0);
    const double du = grid[1] - grid[0];
    const std::size_t K = grid.size();
    const double gamma_factor = C * std::tgamma(1.0 - alpha);

    std::vector<double> hb(K), hv(K);
    for (std::size_t k = 0; k < K; ++k) {
        hb[k] = hbar(h, life, grid[k]);
        hv[k] = h(grid[k]);
    }
    // (h * R1)(y) on the grid, then the forcing integrates its alpha power
    // over the service distribution.
    std::vector<double> conv(K, 0.0);
    for (std::size_t k = 1; k < K; ++k) {
        double acc = 0.5 * (hv[0] * R1[k] + hv[k] * R1[0]);
        for (std::size_t m = 1; m < k; ++m) acc += hv[m] * R1[k - m];
        conv[k] = acc * du;
    }
    const double rate_scale = 1.0 / std::max(life.mean(), 1e-9) + variation_rate(h);
    std::vector<double> forcing(K, 0.0);
    for (std::size_t k = 1; k < K; ++k) {
        const double u = grid[k];
        if (life.kind() == ServiceDistribution::Kind::deterministic) {
            double v = life.p0();
            if (u >= v) forcing[k] = std::pow(lerp_grid(conv, du, u - v), alpha);
            continue;
        }
        forcing[k] = service_expect(life, u, rate_scale, 32, [&](double J) {
            double y = u - J;
            if (y < 0.0) y = 0.0;
            return std::pow(lerp_grid(conv, du, y), alpha);
        });
    }
    std::vector<double> R(K, 0.0);
    R[0] = gamma_factor * forcing[0];
    const double denom = 1.0 - 0.5 * b1 * du * hb[0];
    for (std::size_t k = 1; k < K; ++k) {
        double acc = 0.5 * hb[k] * R[0];
        for (std::size_t m = 1; m < k; ++m) acc += hb[m] * R[k - m];
        R[k] = (gamma_factor * forcing[k] + b1 * du * acc) / denom;
    }
    return R;
}

}  // namespace hawkeslab
