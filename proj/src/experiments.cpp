#include "hawkeslab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hawkeslab/cluster_sim.hpp"
#include "hawkeslab/events.hpp"
#include "hawkeslab/moments.hpp"
#include "hawkeslab/parallel.hpp"
#include "hawkeslab/thinning_sim.hpp"
#include "hawkeslab/thresholds.hpp"

namespace hawkeslab {

namespace {

ServiceDistribution stretch_service(const ServiceDistribution& s, double factor) {
    switch (s.kind()) {
        case ServiceDistribution::Kind::exponential:
            return ServiceDistribution::exponential(s.p0() / factor);
        case ServiceDistribution::Kind::deterministic:
            return ServiceDistribution::deterministic(s.p0() * factor);
        case ServiceDistribution::Kind::lognormal:
            return ServiceDistribution::lognormal(s.p0() + std::log(factor), s.p1());
    }
    return s;
}

void require_univariate(const NetworkModel& model, const char* who) {
    if (model.d != 1) throw std::invalid_argument(std::string(who) + ": univariate models only");
}

}  // namespace

StateSamples sample_state(const NetworkModel& model, double t, std::size_t reps, RngStream master,
                          SimEngine engine, int threads) {
    require_univariate(model, "sample_state");
    auto fn = [&](std::size_t, RngStream rng) -> std::vector<double> {
        EventLog log = engine == SimEngine::thinning
                           ? simulate_network(model, t, rng)
                           : simulate_paths_cluster(model, t, rng);
        PathSample path = reconstruct_paths(log, model, {t});
        return {path.N[0][0], path.Q[0][0], path.Lambda[0][0]};
    };
    auto rows = run_replications(reps, master, fn, threads);
    StateSamples out;
    out.N.reserve(reps);
    out.Q.reserve(reps);
    out.Lambda.reserve(reps);
    for (const auto& r : rows) {
        out.N.push_back(r[0]);
        out.Q.push_back(r[1]);
        out.Lambda.push_back(r[2]);
    }
    return out;
}

FcltResult fclt_run(const NetworkModel& model, double T, double alpha, std::size_t reps,
                    const std::vector<double>& v_grid, RngStream master, int threads) {
    require_univariate(model, "fclt_run");
    if (!(alpha >= 0.0 && alpha <= 0.5))
        throw std::invalid_argument("fclt_run: alpha must lie in [0, 1/2]");
    const Kernel& h = model.kernels[0][0];
    const double b1 = model.marks[0][0].mean();
    const double norm = b1 * h.l1_norm();
    if (!(norm < 1.0)) throw std::invalid_argument("fclt_run: assumption-violated (A1)");
    // A2: finite moment of order 1/(2(1-alpha)) of the kernel; only the
    // power-law shape can fail it.
    if (h.shape() == Kernel::Shape::power_law) {
        double p = 1.0 / (2.0 * (1.0 - alpha));
        if (!(h.exponent() > 1.0 + p))
            throw std::invalid_argument("fclt_run: assumption-violated (A2)");
    }
    const ServiceDistribution life = model.lifetime(0);
    if (alpha == 0.5 && !std::isfinite(life.mean()))
        throw std::invalid_argument("fclt_run: assumption-violated (A3)");

    NetworkModel stretched = model;
    stretched.mode = ExcitationMode::delayed;
    stretched.semantics = ServiceSemantics::scheduled;
    stretched.services = {stretch_service(life, std::pow(T, alpha))};

    const double mu = model.lambda0[0] / (1.0 - norm);
    FcltResult res;
    res.T = T;
    res.alpha = alpha;
    res.reps = reps;
    res.v_grid = v_grid;
    res.centering_mu = mu;
    res.limit_variance = model.lambda0[0] / std::pow(1.0 - norm, 3);
    res.correction = alpha == 0.5
                         ? -model.lambda0[0] * life.mean() * norm / ((1.0 - norm) * (1.0 - norm))
                         : 0.0;

    const double sqrtT = std::sqrt(T);
    auto fn = [&](std::size_t, RngStream rng) -> std::vector<double> {
        EventLog log = simulate_network(stretched, T, rng);
        std::vector<double> stat(v_grid.size(), 0.0);
        std::size_t next = 0;
        double count = 0.0;
        for (std::size_t g = 0; g < v_grid.size(); ++g) {
            const double cutoff = T * v_grid[g];
            for (; next < log.events.size() && log.events[next].time <= cutoff; ++next)
                if (log.events[next].kind == EventKind::arrival) count += 1.0;
            stat[g] = (count - mu * cutoff) / sqrtT;
        }
        return stat;
    };
    auto rows = run_replications(reps, master, fn, threads);
    res.mean.assign(v_grid.size(), 0.0);
    res.variance.assign(v_grid.size(), 0.0);
    res.mean_se.assign(v_grid.size(), 0.0);
    std::vector<double> column(reps);
    for (std::size_t g = 0; g < v_grid.size(); ++g) {
        for (std::size_t r = 0; r < reps; ++r) column[r] = rows[r][g];
        SampleSummary s = summarize(column);
        res.mean[g] = s.mean;
        res.variance[g] = s.variance;
        res.mean_se[g] = s.std_error;
    }
    return res;
}

FllnResult flln_check(const NetworkModel& model, const std::vector<double>& T_ladder,
                      std::size_t reps, RngStream master, int threads) {
    require_univariate(model, "flln_check");
    const double norm = model.marks[0][0].mean() * model.kernels[0][0].l1_norm();
    if (!(norm < 1.0)) throw std::invalid_argument("flln_check: assumption-violated (A1)");
    const double mu = model.lambda0[0] / (1.0 - norm);
    NetworkModel m = model;
    m.mode = ExcitationMode::delayed;
    m.semantics = ServiceSemantics::scheduled;
    m.services = {model.lifetime(0)};

    FllnResult res;
    res.T_ladder = T_ladder;
    const std::size_t v_points = 101;
    for (std::size_t li = 0; li < T_ladder.size(); ++li) {
        const double T = T_ladder[li];
        auto fn = [&](std::size_t, RngStream rng) -> std::vector<double> {
            EventLog log = simulate_network(m, T, rng);
            double sup = 0.0;
            std::size_t next = 0;
            double count = 0.0;
            for (std::size_t g = 0; g <= v_points; ++g) {
                double v = static_cast<double>(g) / v_points;
                for (; next < log.events.size() && log.events[next].time <= T * v; ++next)
                    if (log.events[next].kind == EventKind::arrival) count += 1.0;
                sup = std::max(sup, std::fabs(count / T - mu * v));
            }
            return {sup};
        };
        auto rows = run_replications(reps, master.child("ladder", li), fn, threads);
        std::vector<double> sups(reps);
        for (std::size_t r = 0; r < reps; ++r) sups[r] = rows[r][0];
        std::nth_element(sups.begin(), sups.begin() + sups.size() / 2, sups.end());
        res.median_sup_deviation.push_back(sups[sups.size() / 2]);
    }
    res.decreasing = true;
    for (std::size_t i = 1; i < res.median_sup_deviation.size(); ++i)
        if (res.median_sup_deviation[i] >= res.median_sup_deviation[i - 1]) res.decreasing = false;
    return res;
}

namespace {

// One-sided fluctuation band: 99th percentile over bootstrap rounds of
// sup_x ((F*_A - F_A) - (F*_B - F_B)), evaluated on the pooled support.
DominanceStat dominance_stat(const std::string& name, const std::vector<double>& a,
                             const std::vector<double>& b, RngStream rng) {
    std::vector<double> grid = a;
    grid.insert(grid.end(), b.begin(), b.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    auto sup_diff = [&](const std::vector<double>& fa, const std::vector<double>& fb,
                        bool centered) {
        double sup = -1e300;
        for (double x : grid) {
            double d = ecdf(fa, x) - ecdf(fb, x);
            if (centered) d -= ecdf(sa, x) - ecdf(sb, x);
            sup = std::max(sup, d);
        }
        return sup;
    };
    DominanceStat st;
    st.stat = name;
    st.max_violation = sup_diff(sa, sb, false);

    std::vector<double> boots(static_cast<std::size_t>(thresholds::bootstrap_rounds));
    std::vector<double> ra(a.size()), rb(b.size());
    for (int round = 0; round < thresholds::bootstrap_rounds; ++round) {
        for (std::size_t i = 0; i < a.size(); ++i)
            ra[i] = a[static_cast<std::size_t>(rng.uniform() * a.size())];
        for (std::size_t i = 0; i < b.size(); ++i)
            rb[i] = b[static_cast<std::size_t>(rng.uniform() * b.size())];
        std::sort(ra.begin(), ra.end());
        std::sort(rb.begin(), rb.end());
        boots[static_cast<std::size_t>(round)] = sup_diff(ra, rb, true);
    }
    std::sort(boots.begin(), boots.end());
    st.band = boots[static_cast<std::size_t>(thresholds::band_quantile * (boots.size() - 1))];
    st.pass = st.max_violation <= std::max(st.band, 0.0);
    return st;
}

}  // namespace

DominanceReport dominance_check(const NetworkModel& model_a, const NetworkModel& model_b,
                                const std::vector<double>& t_grid, std::size_t reps,
                                RngStream master, int threads) {
    DominanceReport report;
    report.t_grid = t_grid;
    report.pass = true;
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        const double t = t_grid[ti];
        StateSamples a =
            sample_state(model_a, t, reps, master.child("A", ti), SimEngine::thinning, threads);
        StateSamples b =
            sample_state(model_b, t, reps, master.child("B", ti), SimEngine::thinning, threads);
        RngStream boot = master.child("boot", ti);
        std::array<DominanceStat, 3> stats = {
            dominance_stat("N", a.N, b.N, boot.child("N")),
            dominance_stat("Q", a.Q, b.Q, boot.child("Q")),
            dominance_stat("Lambda", a.Lambda, b.Lambda, boot.child("L")),
        };
        for (const auto& s : stats) report.pass = report.pass && s.pass;
        report.per_t.push_back(std::move(stats));
    }
    return report;
}

StationarityResult stationarity_equality_check(const NetworkModel& model, double t,
                                               std::size_t reps, RngStream master, int threads) {
    require_univariate(model, "stationarity_equality_check");
    NetworkModel hawkes = model;
    hawkes.mode = ExcitationMode::hawkes;
    NetworkModel delayed = model;
    delayed.mode = ExcitationMode::delayed;

    StationarityResult res;
    res.t = t;
    StateSamples h = sample_state(hawkes, t, reps, master.child("hawkes"), SimEngine::thinning, threads);
    StateSamples d =
        sample_state(delayed, t, reps, master.child("delayed"), SimEngine::thinning, threads);
    res.ks_Q = ks_two_sample(h.Q, d.Q);
    res.ks_Lambda = ks_two_sample(h.Lambda, d.Lambda);
    res.hawkes_Q = summarize(h.Q);
    res.delayed_Q = summarize(d.Q);
    res.hawkes_Lambda = summarize(h.Lambda);
    res.delayed_Lambda = summarize(d.Lambda);
    auto [eq, el] = stationary_mean(model);
    res.stationary_EQ = eq;
    res.stationary_EL = el;
    res.pass = res.ks_Q.p_value > thresholds::ks_p && res.ks_Lambda.p_value > thresholds::ks_p;
    return res;
}

HeavyTrafficResult heavy_traffic_run(const NetworkModel& base, const std::vector<double>& rho_ladder,
                                     std::size_t reps, RngStream master, int threads) {
    require_univariate(base, "heavy_traffic_run");
    if (!base.is_markovian())
        throw std::invalid_argument("heavy_traffic_run: Markovian models only");
    const double scale = base.kernels[0][0].scale();
    const double b1 = scale * base.marks[0][0].mean();
    const double b2 = scale * scale * base.marks[0][0].second_moment();
    if (!std::isfinite(b2)) throw std::invalid_argument("heavy_traffic_run: b2 must be finite");

    HeavyTrafficResult out;
    for (std::size_t ri = 0; ri < rho_ladder.size(); ++ri) {
        const double rho = rho_ladder[ri];
        if (!(rho > 0.0 && rho < 1.0))
            throw std::invalid_argument("heavy_traffic_run: rho must lie in (0,1)");
        const double r = b1 / rho;
        NetworkModel m = base;
        m.mode = ExcitationMode::delayed;
        m.kernels[0][0] = Kernel::exponential(r, scale);
        HeavyTrafficPoint pt;
        pt.rho = rho;
        pt.r = r;
        pt.t = thresholds::burn_in(r, b1);
        StateSamples s =
            sample_state(m, pt.t, reps, master.child("rho", ri), SimEngine::thinning, threads);
        std::vector<double> scaled(s.Lambda.size());
        for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = (1.0 - rho) * s.Lambda[i];
        const double shape = 2.0 * r * base.lambda0[0] / b2;
        const double rate = 2.0 * r / b2;
        pt.ks_distance =
            ks_distance(scaled, [&](double x) { return gamma_cdf(x, shape, rate); });
        pt.scaled_Lambda = summarize(scaled);
        pt.gamma_mean = shape / rate;
        pt.gamma_variance = shape / (rate * rate);
        out.points.push_back(pt);
    }
    out.distances_decreasing = true;
    for (std::size_t i = 1; i < out.points.size(); ++i)
        if (out.points[i].ks_distance >= out.points[i - 1].ks_distance)
            out.distances_decreasing = false;
    return out;
}

TailResult tail_propagation_run(const NetworkModel& model, double t, std::size_t reps,
                                double k_fraction, RngStream master, int threads) {
    require_univariate(model, "tail_propagation_run");
    StateSamples s = sample_state(model, t, reps, master.child("paths"), SimEngine::thinning, threads);
    TailResult res;
    res.k_fraction = k_fraction;
    res.reps = reps;
    res.t = t;
    res.hill = hill_tail_index(s.Q, k_fraction, master.child("hill"));
    return res;
}

}  // namespace hawkeslab
