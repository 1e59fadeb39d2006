#include "hawkeslab/cluster_sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "hawkeslab/samplers.hpp"

namespace hawkeslab {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Realized lifetime distribution used by the cluster representation: under
// rate semantics departures are memoryless, so lifetimes are Exp(mu_j).
double sample_lifetime(const NetworkModel& model, int coord, RngStream& rng) {
    if (model.semantics == ServiceSemantics::rate)
        return sample_exponential(rng, model.mu[coord]);
    return model.services[coord].sample(rng);
}

}  // namespace

std::vector<double> sample_offspring_times(ExcitationMode mode, double mark, double service,
                                           const Kernel& kernel, double window, RngStream& rng) {
    std::vector<double> times;
    if (mark <= 0.0 || kernel.is_zero() || window <= 0.0) return times;

    // Active age interval [lo, hi) and the kernel age offset per mode.
    double lo = 0.0, hi = window, shift = 0.0;
    switch (mode) {
        case ExcitationMode::hawkes: break;
        case ExcitationMode::delayed:
            lo = service;
            shift = service;
            break;
        case ExcitationMode::ephemeral:
            hi = std::min(window, service);
            break;
    }
    if (hi <= lo) return times;

    const bool invert = kernel.shape() == Kernel::Shape::exponential || std::isinf(hi);
    if (invert) {
        // Exact inversion of the cumulative mass mark * I(u - shift).
        const double total = mark * (kernel.integral(hi - shift) - kernel.integral(lo - shift));
        double s = 0.0;
        const double base = kernel.integral(lo - shift);
        for (;;) {
            s += sample_exponential(rng, 1.0);
            if (s >= total) break;
            double age = kernel.integral_inverse(base + s / mark);
            times.push_back(age + shift);
        }
        return times;
    }

    // Thinning against the sup bound on the active interval.
    const double bound = mark * kernel.sup_norm();
    if (bound <= 0.0) return times;
    double t = lo;
    for (;;) {
        t += sample_exponential(rng, bound);
        if (t >= hi) break;
        double intensity = mark * kernel(t - shift);
        if (rng.uniform() * bound <= intensity) times.push_back(t);
    }
    return times;
}

namespace {

struct BuildState {
    std::size_t nodes = 0;
    std::size_t cap = 0;
    std::int64_t next_id = 0;
};

void expand(const NetworkModel& model, ClusterNode& node, double horizon, RngStream stream,
            BuildState& st) {
    // Draw order is fixed: lifetime, then per-target (mark, offspring times).
    const int d = model.d;
    const int coord = node.event.coordinate;
    RngStream life_rng = stream.child("service");
    node.event.service = sample_lifetime(model, coord, life_rng);
    node.event.marks.assign(static_cast<std::size_t>(d), 0.0);

    for (int m = 0; m < d; ++m) {
        const Kernel& k = model.kernels[m][coord];
        if (k.is_zero()) continue;
        RngStream mark_rng = stream.child("mark", static_cast<std::uint64_t>(m));
        double mark = model.marks[m][coord].sample(mark_rng);
        node.event.marks[static_cast<std::size_t>(m)] = mark;
        RngStream off_rng = stream.child("offspring", static_cast<std::uint64_t>(m));
        double window = std::isinf(horizon) ? kInf : horizon - node.event.time;
        auto ages = sample_offspring_times(model.mode, mark, node.event.service, k, window, off_rng);
        for (double age : ages) {
            if (++st.nodes > st.cap)
                throw std::runtime_error("generation-cap-exceeded");
            ClusterNode child;
            child.event.time = node.event.time + age;
            child.event.coordinate = m;
            child.event.kind = EventKind::arrival;
            child.event.particle_id = st.next_id++;
            child.event.parent_id = node.event.particle_id;
            node.children.push_back(std::move(child));
        }
    }
    std::uint64_t child_idx = 0;
    for (ClusterNode& child : node.children)
        expand(model, child, horizon, stream.child("node", child_idx++), st);
}

}  // namespace

ClusterNode simulate_cluster(const NetworkModel& model, int coordinate, double birth_time,
                             double horizon, RngStream rng, const ClusterOptions& opts) {
    if (!opts.allow_unstable) {
        auto st = stability_check(model);
        if (!st.stable)
            throw std::runtime_error("simulate_cluster: unstable model (radius " +
                                     std::to_string(st.spectral_radius) +
                                     "); set allow_unstable to override");
    }
    BuildState st;
    st.cap = opts.generation_cap;
    st.nodes = 1;
    ClusterNode root;
    root.event.time = birth_time;
    root.event.coordinate = coordinate;
    root.event.kind = EventKind::arrival;
    root.event.particle_id = st.next_id++;
    root.event.parent_id = -1;
    expand(model, root, horizon, rng, st);
    return root;
}

std::size_t cluster_size(const ClusterNode& node) {
    std::size_t n = 1;
    for (const ClusterNode& c : node.children) n += cluster_size(c);
    return n;
}

std::size_t sample_cluster_total_size(const NetworkModel& model, int coordinate, RngStream rng,
                                      const ClusterOptions& opts) {
    // Breadth-first count; only lifetimes, marks and offspring counts are
    // drawn, so huge clusters cost no tree storage.
    struct Item {
        int coord;
        RngStream stream;
    };
    std::deque<Item> queue;
    queue.push_back({coordinate, rng});
    std::size_t total = 0;
    const int d = model.d;
    while (!queue.empty()) {
        Item it = queue.front();
        queue.pop_front();
        if (++total > opts.generation_cap) throw std::runtime_error("generation-cap-exceeded");
        RngStream life_rng = it.stream.child("service");
        double life = sample_lifetime(model, it.coord, life_rng);
        std::uint64_t child_idx = 0;
        for (int m = 0; m < d; ++m) {
            const Kernel& k = model.kernels[m][it.coord];
            if (k.is_zero()) continue;
            RngStream mark_rng = it.stream.child("mark", static_cast<std::uint64_t>(m));
            double mark = model.marks[m][it.coord].sample(mark_rng);
            RngStream off_rng = it.stream.child("offspring", static_cast<std::uint64_t>(m));
            auto ages = sample_offspring_times(model.mode, mark, life, k, kInf, off_rng);
            for (std::size_t c = 0; c < ages.size(); ++c)
                queue.push_back({m, it.stream.child("node", child_idx++)});
        }
    }
    return total;
}

namespace {

void flatten(const ClusterNode& node, double horizon, std::int64_t id_offset, EventLog& log) {
    Event arr = node.event;
    arr.particle_id += id_offset;
    if (arr.parent_id >= 0) arr.parent_id += id_offset;
    const double dep_time = arr.time + arr.service;
    log.events.push_back(arr);
    if (dep_time <= horizon) {
        Event dep;
        dep.time = dep_time;
        dep.coordinate = arr.coordinate;
        dep.kind = EventKind::departure;
        dep.particle_id = arr.particle_id;
        log.events.push_back(dep);
    }
    for (const ClusterNode& c : node.children) flatten(c, horizon, id_offset, log);
}

}  // namespace

EventLog simulate_paths_cluster(const NetworkModel& model, double horizon, RngStream rng,
                                const ClusterOptions& opts) {
    validate_network(model);
    if (model.has_routing())
        throw std::invalid_argument(
            "cluster engine: rerouting networks have no cluster representation; use the thinning engine");
    if (!std::isfinite(horizon) || horizon < 0.0)
        throw std::invalid_argument("simulate_paths: horizon must be finite and >= 0");
    if (!opts.allow_unstable) {
        auto st = stability_check(model);
        if (!st.stable)
            throw std::runtime_error("simulate_paths: unstable model (radius " +
                                     std::to_string(st.spectral_radius) + ")");
    }
    EventLog log;
    log.d = model.d;
    log.horizon = horizon;
    std::int64_t id_offset = 0;
    ClusterOptions sub = opts;
    sub.allow_unstable = true;  // checked once above
    for (int j = 0; j < model.d; ++j) {
        RngStream imm_rng = rng.child("immigrants", static_cast<std::uint64_t>(j));
        std::uint64_t count = sample_poisson(imm_rng, model.lambda0[j] * horizon);
        for (std::uint64_t i = 0; i < count; ++i) {
            double birth = imm_rng.uniform() * horizon;
            RngStream tree_rng =
                rng.child("tree", (static_cast<std::uint64_t>(j) << 40) ^ i);
            ClusterNode root = simulate_cluster(model, j, birth, horizon, tree_rng, sub);
            flatten(root, horizon, id_offset, log);
            id_offset += static_cast<std::int64_t>(cluster_size(root));
        }
    }
    log.sort();
    return log;
}

}  // namespace hawkeslab
