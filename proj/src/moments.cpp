#include "hawkeslab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hawkeslab {

int MomentIndex::order() const {
    return std::accumulate(q.begin(), q.end(), 0) + std::accumulate(g.begin(), g.end(), 0);
}

bool MomentIndex::operator<(const MomentIndex& o) const {
    if (q != o.q) return q < o.q;
    return g < o.g;
}

bool MomentIndex::operator==(const MomentIndex& o) const { return q == o.q && g == o.g; }

std::string MomentIndex::key() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < q.size(); ++i) os << (i ? "," : "") << q[i];
    os << '|';
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
    return os.str();
}

namespace {

void enumerate_rec(int slots, int remaining, std::vector<int>& cur,
                   const std::function<void(const std::vector<int>&)>& emit) {
    if (slots == 1) {
        cur.push_back(remaining);
        emit(cur);
        cur.pop_back();
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur.push_back(v);
        enumerate_rec(slots - 1, remaining - v, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

std::vector<MomentIndex> enumerate_moment_indices(int d, int n) {
    // Compositions of n into 2d parts, (q | g), q-heavy first: for d = 1 this
    // yields (n,0), (n-1,1), ..., (0,n).
    std::vector<MomentIndex> out;
    std::vector<int> cur;
    enumerate_rec(2 * d, n, cur, [&](const std::vector<int>& full) {
        MomentIndex idx;
        idx.q.assign(full.begin(), full.begin() + d);
        idx.g.assign(full.begin() + d, full.end());
        out.push_back(std::move(idx));
    });
    return out;
}

namespace {

void require_moment_model(const NetworkModel& model, int n) {
    validate_network(model);
    if (!model.is_markovian())
        throw std::invalid_argument("assemble_moment_system: nonexponential-kernel");
    if (model.mode != ExcitationMode::delayed)
        throw std::invalid_argument("moment engine covers departure-triggered (delayed) models");
    if (model.semantics != ServiceSemantics::rate)
        throw std::invalid_argument("moment engine requires rate service semantics");
    if (!model.is_linear())
        throw std::invalid_argument("moment engine requires linear rate maps");
    for (int i = 0; i < model.d; ++i)
        for (int j = 0; j < model.d; ++j)
            if (!model.kernels[i][j].is_zero() &&
                !std::isfinite(model.marks[i][j].raw_moment(n)))
                throw std::invalid_argument("assemble_moment_system: missing-mark-moment");
}

// Effective mark of pair (i,j) is scale_ij * B_ij, folding the kernel scale
// into the jump size.
double effective_mark_moment(const NetworkModel& model, int i, int j, int order) {
    if (order == 0) return 1.0;
    double scale = model.kernels[i][j].is_zero() ? 0.0 : model.kernels[i][j].scale();
    if (scale == 0.0) return 0.0;
    return std::pow(scale, order) * model.marks[i][j].raw_moment(order);
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

MomentSystem assemble_moment_system(const NetworkModel& model, int n) {
    require_moment_model(model, n);
    const int d = model.d;
    MomentSystem sys;
    sys.indices = enumerate_moment_indices(d, n);
    const std::size_t dim = sys.indices.size();
    sys.A.assign(dim, std::vector<double>(dim, 0.0));
    std::map<MomentIndex, std::size_t> pos;
    for (std::size_t k = 0; k < dim; ++k) pos[sys.indices[k]] = k;
    std::vector<double> rate(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) rate[i] = model.markov_rate(i);

    for (std::size_t row = 0; row < dim; ++row) {
        const MomentIndex& e = sys.indices[row];
        double diag = 0.0;
        for (int j = 0; j < d; ++j) {
            diag -= e.g[j] * rate[j] + e.q[j] * model.mu[j];
            for (int i = 0; i < d; ++i) diag -= model.mu_route[i][j] * e.q[j];
        }
        sys.A[row][row] += diag;

        for (int j = 0; j < d; ++j) {
            // q_j E[Q^(q - e_j) L^(g + e_j)]
            if (e.q[j] >= 1) {
                MomentIndex t = e;
                --t.q[j];
                ++t.g[j];
                sys.A[row][pos.at(t)] += e.q[j];
            }
            // mu_j g_k b_kj E[Q^(q + e_j) L^(g - e_k)]
            for (int k = 0; k < d; ++k) {
                if (e.g[k] >= 1 && model.mu[j] > 0.0) {
                    double b1 = effective_mark_moment(model, k, j, 1);
                    if (b1 != 0.0) {
                        MomentIndex t = e;
                        ++t.q[j];
                        --t.g[k];
                        sys.A[row][pos.at(t)] += model.mu[j] * e.g[k] * b1;
                    }
                }
            }
            // routing: + mu_route[i][j]... the compact equation couples
            // (q + e_j - e_i, g) with weight q_i for each pair (i, j)
            for (int i = 0; i < d; ++i) {
                if (model.mu_route[i][j] > 0.0 && e.q[i] >= 1) {
                    MomentIndex t = e;
                    ++t.q[j];
                    --t.q[i];
                    sys.A[row][pos.at(t)] += model.mu_route[i][j] * e.q[i];
                }
            }
        }

        // forcing from lower orders
        for (int j = 0; j < d; ++j) {
            if (e.g[j] >= 1) {
                MomentIndex t = e;
                --t.g[j];
                sys.forcing.push_back({row, t, e.g[j] * rate[j] * model.lambda0[j]});
            }
        }
        // mu_j sum over l <= g with |l| <= |g| - 2 of C(g, l) E[B_j^(g-l)]
        // on index (q + e_j, l)
        int g_total = std::accumulate(e.g.begin(), e.g.end(), 0);
        if (g_total >= 2) {
            std::vector<MomentIndex> subs = [&] {
                // all l with 0 <= l <= g componentwise
                std::vector<MomentIndex> acc;
                std::vector<int> cur(static_cast<std::size_t>(d), 0);
                std::function<void(int)> rec = [&](int coord) {
                    if (coord == d) {
                        MomentIndex t;
                        t.q = e.q;
                        t.g = cur;
                        acc.push_back(t);
                        return;
                    }
                    for (int v = 0; v <= e.g[coord]; ++v) {
                        cur[static_cast<std::size_t>(coord)] = v;
                        rec(coord + 1);
                    }
                };
                rec(0);
                return acc;
            }();
            for (int j = 0; j < d; ++j) {
                if (!(model.mu[j] > 0.0)) continue;
                for (const MomentIndex& sub : subs) {
                    int l_total = std::accumulate(sub.g.begin(), sub.g.end(), 0);
                    if (l_total > g_total - 2) continue;
                    double coeff = model.mu[j];
                    for (int l = 0; l < d; ++l) {
                        int m = e.g[l] - sub.g[l];
                        coeff *= binom(e.g[l], sub.g[l]) * effective_mark_moment(model, l, j, m);
                        if (coeff == 0.0) break;
                    }
                    if (coeff == 0.0) continue;
                    MomentIndex t = sub;
                    ++t.q[j];
                    sys.forcing.push_back({row, t, coeff});
                }
            }
        }
    }
    return sys;
}

double MomentTable::value_at(const MomentIndex& index, double t) const {
    const int n = index.order();
    if (n == 0) return 1.0;
    if (n > max_order) throw std::invalid_argument("MomentTable: order beyond table");
    const auto& idx = indices[static_cast<std::size_t>(n)];
    auto it = std::find(idx.begin(), idx.end(), index);
    if (it == idx.end()) throw std::invalid_argument("MomentTable: unknown index " + index.key());
    std::size_t col = static_cast<std::size_t>(it - idx.begin());
    const auto& v = values[static_cast<std::size_t>(n)][col];
    const auto& dv = derivs[static_cast<std::size_t>(n)][col];
    if (t <= times.front()) return v.front();
    if (t >= times.back()) return v.back();
    std::size_t lo = static_cast<std::size_t>((t - times.front()) / (times[1] - times[0]));
    if (lo + 1 >= times.size()) lo = times.size() - 2;
    double h = times[lo + 1] - times[lo];
    double x = (t - times[lo]) / h;
    // cubic Hermite with nodal derivatives
    double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
    double h10 = x * (1 - x) * (1 - x);
    double h01 = x * x * (3 - 2 * x);
    double h11 = x * x * (x - 1);
    return h00 * v[lo] + h10 * h * dv[lo] + h01 * v[lo + 1] + h11 * h * dv[lo + 1];
}

double MomentTable::value_at_node(const MomentIndex& index, std::size_t node) const {
    const int n = index.order();
    if (n == 0) return 1.0;
    const auto& idx = indices[static_cast<std::size_t>(n)];
    auto it = std::find(idx.begin(), idx.end(), index);
    if (it == idx.end()) throw std::invalid_argument("MomentTable: unknown index");
    return values[static_cast<std::size_t>(n)][static_cast<std::size_t>(it - idx.begin())][node];
}

MomentTable solve_moments_transient(const NetworkModel& model, int n_max, double t_end,
                                    const MomentSolveOptions& opts) {
    if (n_max < 1) throw std::invalid_argument("solve_moments_transient: n_max >= 1");
    if (!(t_end > 0.0)) throw std::invalid_argument("solve_moments_transient: t_end > 0");
    MomentTable table;
    table.d = model.d;
    table.max_order = n_max;
    const std::size_t steps = opts.rk_steps;
    table.times.resize(steps + 1);
    const double h = t_end / static_cast<double>(steps);
    for (std::size_t k = 0; k <= steps; ++k) table.times[k] = h * static_cast<double>(k);
    table.indices.resize(static_cast<std::size_t>(n_max) + 1);
    table.values.resize(static_cast<std::size_t>(n_max) + 1);
    table.derivs.resize(static_cast<std::size_t>(n_max) + 1);
    table.indices[0] = {MomentIndex{std::vector<int>(model.d, 0), std::vector<int>(model.d, 0)}};

    for (int n = 1; n <= n_max; ++n) {
        MomentSystem sys = assemble_moment_system(model, n);
        const std::size_t dim = sys.indices.size();
        table.indices[static_cast<std::size_t>(n)] = sys.indices;
        auto& vals = table.values[static_cast<std::size_t>(n)];
        auto& devs = table.derivs[static_cast<std::size_t>(n)];
        vals.assign(dim, std::vector<double>(steps + 1, 0.0));
        devs.assign(dim, std::vector<double>(steps + 1, 0.0));

        std::vector<double> x(dim, 0.0);
        for (std::size_t c = 0; c < dim; ++c) {
            const MomentIndex& idx = sys.indices[c];
            bool pure_lambda = std::all_of(idx.q.begin(), idx.q.end(), [](int v) { return v == 0; });
            if (pure_lambda) {
                double v = 1.0;
                for (int j = 0; j < model.d; ++j) v *= std::pow(model.lambda0[j], idx.g[j]);
                x[c] = v;
            }
        }

        auto rhs = [&](double t, const std::vector<double>& state, std::vector<double>& out) {
            for (std::size_t r = 0; r < dim; ++r) {
                double acc = 0.0;
                const auto& row = sys.A[r];
                for (std::size_t c = 0; c < dim; ++c) acc += row[c] * state[c];
                out[r] = acc;
            }
            for (const auto& f : sys.forcing) {
                double lower = f.index.order() == 0 ? 1.0 : table.value_at(f.index, t);
                out[f.row] += f.coeff * lower;
            }
        };

        std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
        rhs(0.0, x, k1);
        for (std::size_t c = 0; c < dim; ++c) {
            vals[c][0] = x[c];
            devs[c][0] = k1[c];
        }
        for (std::size_t step = 0; step < steps; ++step) {
            double t = table.times[step];
            rhs(t, x, k1);
            for (std::size_t c = 0; c < dim; ++c) tmp[c] = x[c] + 0.5 * h * k1[c];
            rhs(t + 0.5 * h, tmp, k2);
            for (std::size_t c = 0; c < dim; ++c) tmp[c] = x[c] + 0.5 * h * k2[c];
            rhs(t + 0.5 * h, tmp, k3);
            for (std::size_t c = 0; c < dim; ++c) tmp[c] = x[c] + h * k3[c];
            rhs(t + h, tmp, k4);
            for (std::size_t c = 0; c < dim; ++c)
                x[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            for (double v : x)
                if (!std::isfinite(v))
                    throw std::runtime_error(
                        "solve_moments_transient: step-underflow; retry with rk_steps >= " +
                        std::to_string(4 * steps));
            rhs(t + h, x, k1);
            for (std::size_t c = 0; c < dim; ++c) {
                vals[c][step + 1] = x[c];
                devs[c][step + 1] = k1[c];
            }
        }
    }
    return table;
}

std::vector<double> univariate_eigenvalues(int n, double mu, double r, double b1) {
    if (n < 1) throw std::invalid_argument("univariate_eigenvalues: n >= 1");
    if (!(mu > 0.0) || !(r > 0.0) || b1 < 0.0)
        throw std::invalid_argument("univariate_eigenvalues: need mu, r > 0 and b1 >= 0");
    std::vector<double> ev(static_cast<std::size_t>(n) + 1);
    const double root = std::sqrt((mu - r) * (mu - r) + 4.0 * mu * b1);
    for (int k = 0; k <= n; ++k)
        ev[static_cast<std::size_t>(k)] = -0.5 * n * (mu + r) + 0.5 * (n - 2 * k) * root;
    return ev;
}

std::vector<std::vector<double>> lagrange_sylvester_exp(
    const std::vector<std::vector<double>>& A, const std::vector<double>& eigenvalues, double t) {
    const std::size_t dim = A.size();
    if (eigenvalues.size() != dim)
        throw std::invalid_argument("lagrange_sylvester_exp: need one eigenvalue per dimension");
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = a + 1; b < dim; ++b)
            if (std::fabs(eigenvalues[a] - eigenvalues[b]) < 1e-9)
                throw std::invalid_argument("lagrange_sylvester_exp: repeated-eigenvalues");

    auto matmul = [dim](const std::vector<std::vector<double>>& X,
                        const std::vector<std::vector<double>>& Y) {
        std::vector<std::vector<double>> Z(dim, std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k) {
                double x = X[i][k];
                if (x == 0.0) continue;
                for (std::size_t j = 0; j < dim; ++j) Z[i][j] += x * Y[k][j];
            }
        return Z;
    };

    std::vector<std::vector<double>> result(dim, std::vector<double>(dim, 0.0));
    for (std::size_t k = 0; k < dim; ++k) {
        std::vector<std::vector<double>> term(dim, std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < dim; ++i) term[i][i] = 1.0;
        for (std::size_t j = 0; j < dim; ++j) {
            if (j == k) continue;
            std::vector<std::vector<double>> factor = A;
            for (std::size_t i = 0; i < dim; ++i) factor[i][i] -= eigenvalues[j];
            const double denom = eigenvalues[k] - eigenvalues[j];
            for (auto& row : factor)
                for (double& v : row) v /= denom;
            term = matmul(term, factor);
        }
        const double scale = std::exp(eigenvalues[k] * t);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) result[i][j] += scale * term[i][j];
    }
    return result;
}

namespace {

// Univariate forcing vector C(s) for order n, read from the lower-order table.
std::vector<double> univariate_forcing(const NetworkModel& model, const MomentSystem& sys,
                                       const MomentTable& lower, double s) {
    std::vector<double> c(sys.indices.size(), 0.0);
    for (const auto& f : sys.forcing) {
        double v = f.index.order() == 0 ? 1.0 : lower.value_at(f.index, s);
        c[f.row] += f.coeff * v;
    }
    (void)model;
    return c;
}

}  // namespace

std::vector<double> transient_Z_univariate(const NetworkModel& model, int n, double t,
                                           const MomentTable& lower_orders) {
    if (model.d != 1) throw std::invalid_argument("transient_Z_univariate: univariate only");
    MomentSystem sys = assemble_moment_system(model, n);
    const std::size_t dim = sys.indices.size();  // n + 1
    const double mu = model.mu[0];
    const double r = model.markov_rate(0);
    const double b1 = effective_mark_moment(model, 0, 0, 1);
    std::vector<double> ev = univariate_eigenvalues(n, mu, r, b1);

    std::vector<double> z0(dim, 0.0);
    z0[dim - 1] = std::pow(model.lambda0[0], n);  // Z(0) = l0^n on the last slot

    auto expA = [&](double dt) { return lagrange_sylvester_exp(sys.A, ev, dt); };
    std::vector<std::vector<double>> eAt = expA(t);
    std::vector<double> out(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) out[i] += eAt[i][j] * z0[j];

    if (t > 0.0 && !sys.forcing.empty()) {
        // componentwise adaptive Simpson on e^{A(t-s)} C(s)
        auto integrand = [&](double s) {
            std::vector<std::vector<double>> e = expA(t - s);
            std::vector<double> c = univariate_forcing(model, sys, lower_orders, s);
            std::vector<double> v(dim, 0.0);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) v[i] += e[i][j] * c[j];
            return v;
        };
        std::function<std::vector<double>(double, double, std::vector<double>, std::vector<double>,
                                          std::vector<double>, std::vector<double>, double, int)>
            rec = [&](double a, double b, std::vector<double> fa, std::vector<double> fm,
                      std::vector<double> fb, std::vector<double> whole, double tol,
                      int depth) -> std::vector<double> {
            double m = 0.5 * (a + b);
            std::vector<double> flm = integrand(0.5 * (a + m));
            std::vector<double> frm = integrand(0.5 * (m + b));
            std::vector<double> left(dim), right(dim);
            double err = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                left[i] = (m - a) / 6.0 * (fa[i] + 4.0 * flm[i] + fm[i]);
                right[i] = (b - m) / 6.0 * (fm[i] + 4.0 * frm[i] + fb[i]);
                err = std::max(err, std::fabs(left[i] + right[i] - whole[i]));
            }
            if (depth <= 0 || err <= 15.0 * tol) {
                std::vector<double> res(dim);
                for (std::size_t i = 0; i < dim; ++i)
                    res[i] = left[i] + right[i] + (left[i] + right[i] - whole[i]) / 15.0;
                return res;
            }
            auto l = rec(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
            auto rgt = rec(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
            for (std::size_t i = 0; i < dim; ++i) l[i] += rgt[i];
            return l;
        };
        std::vector<double> fa = integrand(0.0), fb = integrand(t), fm = integrand(0.5 * t);
        std::vector<double> whole(dim);
        for (std::size_t i = 0; i < dim; ++i) whole[i] = t / 6.0 * (fa[i] + 4.0 * fm[i] + fb[i]);
        std::vector<double> integral = rec(0.0, t, fa, fm, fb, whole, 1e-9, 24);
        for (std::size_t i = 0; i < dim; ++i) out[i] += integral[i];
    }
    return out;
}

std::vector<double> transient_Z_univariate(const NetworkModel& model, int n, double t) {
    MomentTable lower;
    if (n > 1) lower = solve_moments_transient(model, n - 1, std::max(t, 1e-9));
    else {
        lower.d = model.d;
        lower.max_order = 0;
        lower.times = {0.0, std::max(t, 1.0)};
    }
    return transient_Z_univariate(model, n, t, lower);
}

std::pair<double, double> stationary_mean(const NetworkModel& model) {
    if (model.d != 1) throw std::invalid_argument("stationary_mean: univariate only");
    if (!model.is_markovian()) throw std::invalid_argument("stationary_mean: nonexponential-kernel");
    const double r = model.markov_rate(0);
    const double b1 = effective_mark_moment(model, 0, 0, 1);
    const double mu = model.mu[0];
    const double l0 = model.lambda0[0];
    if (!(b1 / r < 1.0)) throw std::invalid_argument("stationary_mean: unstable-model");
    if (!(mu > 0.0)) throw std::invalid_argument("stationary_mean: mu must be > 0");
    return {r * l0 / (mu * (r - b1)), r * l0 / (r - b1)};
}

double characteristics_transform(const NetworkModel& model, double t,
                                 const std::vector<double>& z, const std::vector<double>& s,
                                 std::size_t rk_steps) {
    validate_network(model);
    if (!model.is_markovian())
        throw std::invalid_argument("characteristics_transform: nonexponential-kernel");
    if (model.mode != ExcitationMode::delayed)
        throw std::invalid_argument("characteristics_transform covers departure-triggered models");
    const int d = model.d;
    if (z.size() != static_cast<std::size_t>(d) || s.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("characteristics_transform: argument dimension mismatch");
    for (int j = 0; j < d; ++j) {
        if (!(z[j] >= 0.0 && z[j] <= 1.0))
            throw std::invalid_argument("characteristics_transform: z in [0,1]");
        if (!(s[j] >= 0.0)) throw std::invalid_argument("characteristics_transform: s >= 0");
    }
    std::vector<double> rate(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) rate[i] = model.markov_rate(i);

    // state: (s_1..s_d, z_1..z_d, I_1..I_d) with I_j' = s_j
    std::vector<double> x(3 * static_cast<std::size_t>(d), 0.0);
    for (int j = 0; j < d; ++j) {
        x[j] = s[j];
        x[d + j] = z[j];
    }
    auto beta_j = [&](int j, const std::vector<double>& state) {
        double prod = 1.0;
        for (int i = 0; i < d; ++i) {
            double scale = model.kernels[i][j].is_zero() ? 0.0 : model.kernels[i][j].scale();
            if (scale == 0.0) continue;
            prod *= model.marks[i][j].laplace(std::max(0.0, state[i] * scale));
        }
        return prod;
    };
    auto rhs = [&](const std::vector<double>& state, std::vector<double>& out) {
        for (int j = 0; j < d; ++j) {
            out[j] = -rate[j] * state[j] - state[d + j] + 1.0;
            double zj = state[d + j];
            double dz = model.mu[j] * (beta_j(j, state) - zj);
            for (int i = 0; i < d; ++i) dz += model.mu_route[i][j] * (state[d + i] - zj);
            out[d + j] = dz;
            out[2 * d + j] = state[j];
        }
    };
    if (t > 0.0) {
        const double h = t / static_cast<double>(rk_steps);
        std::vector<double> k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size()), tmp(x.size());
        for (std::size_t step = 0; step < rk_steps; ++step) {
            rhs(x, k1);
            for (std::size_t c = 0; c < x.size(); ++c) tmp[c] = x[c] + 0.5 * h * k1[c];
            rhs(tmp, k2);
            for (std::size_t c = 0; c < x.size(); ++c) tmp[c] = x[c] + 0.5 * h * k2[c];
            rhs(tmp, k3);
            for (std::size_t c = 0; c < x.size(); ++c) tmp[c] = x[c] + h * k3[c];
            rhs(tmp, k4);
            for (std::size_t c = 0; c < x.size(); ++c)
                x[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
    }
    double log_value = 0.0;
    for (int j = 0; j < d; ++j)
        log_value += -model.lambda0[j] * (x[j] + rate[j] * x[2 * d + j]);
    return std::exp(log_value);
}

double stirling_second(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n == 0) return 1.0;
    static std::vector<std::vector<double>> cache{{1.0}};
    while (static_cast<int>(cache.size()) <= n) {
        int m = static_cast<int>(cache.size());
        std::vector<double> row(static_cast<std::size_t>(m) + 1, 0.0);
        for (int j = 1; j <= m; ++j) {
            double prev_low = j - 1 <= m - 1 ? cache[m - 1][j - 1] : 0.0;
            double prev_same = j <= m - 1 ? cache[m - 1][j] : 0.0;
            row[static_cast<std::size_t>(j)] = prev_low + j * prev_same;
        }
        cache.push_back(std::move(row));
    }
    return cache[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

MomentTable factorial_to_raw(const MomentTable& table) {
    MomentTable out = table;
    for (int n = 1; n <= table.max_order; ++n) {
        const auto& idx = table.indices[static_cast<std::size_t>(n)];
        for (std::size_t c = 0; c < idx.size(); ++c) {
            const MomentIndex& e = idx[c];
            for (std::size_t node = 0; node < table.times.size(); ++node) {
                // E[prod Q^m L^g] = sum over k <= m of prod S2(m_j, k_j) E[Qbar^k L^g]
                double acc = 0.0;
                std::vector<int> k(e.q.size(), 0);
                std::function<void(std::size_t, double)> rec = [&](std::size_t coord, double w) {
                    if (coord == e.q.size()) {
                        MomentIndex sub;
                        sub.q = k;
                        sub.g = e.g;
                        double v = sub.order() == 0 ? 1.0 : table.value_at_node(sub, node);
                        acc += w * v;
                        return;
                    }
                    for (int v = 0; v <= e.q[coord]; ++v) {
                        double s2 = stirling_second(e.q[coord], v);
                        if (s2 == 0.0) continue;
                        k[coord] = v;
                        rec(coord + 1, w * s2);
                    }
                };
                rec(0, 1.0);
                out.values[static_cast<std::size_t>(n)][c][node] = acc;
                out.derivs[static_cast<std::size_t>(n)][c][node] = 0.0;  // not tracked for raw
            }
        }
    }
    return out;
}

}  // namespace hawkeslab
