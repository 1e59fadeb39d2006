#include "hawkeslab/thinning_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "hawkeslab/samplers.hpp"

namespace hawkeslab {

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> excitation_at(const std::vector<ExcitationAnchor>& anchors,
                                  const NetworkModel& model, double t) {
    std::vector<double> x(static_cast<std::size_t>(model.d), 0.0);
    for (const auto& a : anchors) {
        if (t >= a.expiry) continue;
        double age = t - a.epoch;
        if (age < 0.0) continue;
        for (int i = 0; i < model.d; ++i) {
            double m = a.marks[static_cast<std::size_t>(i)];
            if (m > 0.0) x[static_cast<std::size_t>(i)] += m * model.kernels[i][a.source](age);
        }
    }
    return x;
}

std::vector<double> conditional_intensity(const std::vector<ExcitationAnchor>& anchors,
                                          const NetworkModel& model, double t) {
    std::vector<double> x = excitation_at(anchors, model, t);
    for (int i = 0; i < model.d; ++i)
        x[static_cast<std::size_t>(i)] =
            model.rate_map(i).apply(model.lambda0[i], x[static_cast<std::size_t>(i)]);
    return x;
}

namespace {

// Live particle bookkeeping. Under scheduled semantics dep_time is fixed at
// arrival; anchors for ephemeral particles are addressed by particle id.
struct Particle {
    std::int64_t id;
    double arrival;
    double dep_time;                 // +inf under rate semantics
    std::vector<double> marks;       // delayed/scheduled: marks drawn at arrival
};

struct Engine {
    const NetworkModel& model;
    const double horizon;
    RngStream& rng;
    EventLog log;

    // Exponential fast path: per-(i,j) decayed excess, exact between events.
    bool fast;
    std::vector<std::vector<double>> excess;  // [i][j]
    double excess_time = 0.0;

    std::vector<ExcitationAnchor> anchors;    // general path
    std::vector<std::vector<Particle>> live;  // per coordinate
    std::int64_t next_id = 0;

    // scheduled departures: (time, coordinate, slot key = particle id)
    using Sched = std::pair<double, std::pair<int, std::int64_t>>;
    std::priority_queue<Sched, std::vector<Sched>, std::greater<Sched>> sched;

    explicit Engine(const NetworkModel& m, double T, RngStream& r)
        : model(m), horizon(T), rng(r) {
        fast = true;
        for (int i = 0; i < m.d && fast; ++i)
            for (int j = 0; j < m.d && fast; ++j)
                if (!m.kernels[i][j].is_zero() &&
                    m.kernels[i][j].shape() != Kernel::Shape::exponential)
                    fast = false;
        excess.assign(static_cast<std::size_t>(m.d),
                      std::vector<double>(static_cast<std::size_t>(m.d), 0.0));
        live.resize(static_cast<std::size_t>(m.d));
        log.d = m.d;
        log.horizon = T;
    }

    void decay_to(double t) {
        if (!fast) return;
        double dt = t - excess_time;
        if (dt <= 0.0) return;
        for (int i = 0; i < model.d; ++i)
            for (int j = 0; j < model.d; ++j) {
                double& e = excess[i][j];
                if (e > 0.0) e *= std::exp(-model.kernels[i][j].rate() * dt);
            }
        excess_time = t;
    }

    std::vector<double> excitation(double t) {
        if (fast) {
            decay_to(t);
            std::vector<double> x(static_cast<std::size_t>(model.d), 0.0);
            for (int i = 0; i < model.d; ++i)
                for (int j = 0; j < model.d; ++j) x[i] += excess[i][j];
            return x;
        }
        prune_anchors(t);
        return excitation_at(anchors, model, t);
    }

    std::vector<double> intensity(double t) {
        std::vector<double> x = excitation(t);
        for (int i = 0; i < model.d; ++i)
            x[i] = model.rate_map(i).apply(model.lambda0[i], x[i]);
        return x;
    }

    void prune_anchors(double t) {
        std::erase_if(anchors, [&](const ExcitationAnchor& a) {
            if (t >= a.expiry) return true;
            double age = t - a.epoch;
            if (age < 0.0) return false;
            for (int i = 0; i < model.d; ++i) {
                const Kernel& k = model.kernels[i][a.source];
                if (a.marks[static_cast<std::size_t>(i)] > 0.0 && k(age) > 1e-300) return false;
            }
            return age > 0.0;
        });
    }

    // Installs an anchor whose kernel starts decaying now. Ephemeral anchors
    // are additionally tracked so the expiry can subtract their remainder.
    void install_anchor_now(int source, double epoch, std::vector<double> marks, bool tracked,
                            std::int64_t pid) {
        if (fast) {
            decay_to(epoch);
            for (int i = 0; i < model.d; ++i)
                excess[i][source] +=
                    marks[static_cast<std::size_t>(i)] * model.kernels[i][source].scale();
            if (tracked) anchors.push_back({source, epoch, std::move(marks), kInf, pid});
        } else {
            anchors.push_back({source, epoch, std::move(marks), kInf, pid});
        }
    }

    void remove_ephemeral_anchor(std::int64_t pid, double t) {
        auto it = std::find_if(anchors.begin(), anchors.end(),
                               [&](const ExcitationAnchor& a) { return a.particle_id == pid; });
        if (it == anchors.end()) return;
        if (fast) {
            decay_to(t);
            double age = t - it->epoch;
            for (int i = 0; i < model.d; ++i) {
                double rem = it->marks[static_cast<std::size_t>(i)] *
                             model.kernels[i][it->source].scale() *
                             std::exp(-model.kernels[i][it->source].rate() * age);
                excess[i][it->source] = std::max(0.0, excess[i][it->source] - rem);
            }
        }
        anchors.erase(it);
    }

    std::vector<double> draw_marks(int source, RngStream& r) {
        std::vector<double> marks(static_cast<std::size_t>(model.d), 0.0);
        for (int i = 0; i < model.d; ++i)
            if (!model.kernels[i][source].is_zero())
                marks[static_cast<std::size_t>(i)] = model.marks[i][source].sample(r);
        return marks;
    }

    Particle take_particle(int coord, std::size_t idx) {
        auto& v = live[static_cast<std::size_t>(coord)];
        Particle p = std::move(v[idx]);
        v[idx] = std::move(v.back());
        v.pop_back();
        return p;
    }

    void handle_arrival(int coord, double t) {
        Particle p;
        p.id = next_id++;
        p.arrival = t;
        p.dep_time = kInf;

        Event e;
        e.time = t;
        e.coordinate = coord;
        e.kind = EventKind::arrival;
        e.particle_id = p.id;

        const bool scheduled = model.semantics == ServiceSemantics::scheduled;
        if (scheduled) {
            e.service = model.services[coord].sample(rng);
            p.dep_time = t + e.service;
            sched.push({p.dep_time, {coord, p.id}});
        }
        switch (model.mode) {
            case ExcitationMode::hawkes:
                e.marks = draw_marks(coord, rng);
                install_anchor_now(coord, t, e.marks, false, p.id);
                break;
            case ExcitationMode::ephemeral:
                // expires at the departure (scheduled or rate-driven), which
                // removes the tracked anchor exactly
                e.marks = draw_marks(coord, rng);
                install_anchor_now(coord, t, e.marks, true, p.id);
                break;
            case ExcitationMode::delayed:
                if (scheduled) {
                    // marks drawn at arrival, anchor activates at departure
                    e.marks = draw_marks(coord, rng);
                    p.marks = e.marks;
                }
                break;
        }
        log.events.push_back(e);
        live[static_cast<std::size_t>(coord)].push_back(std::move(p));
    }

    void handle_rate_departure(int coord, double t) {
        auto& v = live[static_cast<std::size_t>(coord)];
        std::size_t idx = static_cast<std::size_t>(rng.uniform() * v.size());
        if (idx >= v.size()) idx = v.size() - 1;
        Particle p = take_particle(coord, idx);
        Event e;
        e.time = t;
        e.coordinate = coord;
        e.kind = EventKind::departure;
        e.particle_id = p.id;
        if (model.mode == ExcitationMode::delayed) {
            e.marks = draw_marks(coord, rng);
            install_anchor_now(coord, t, e.marks, false, p.id);
        } else if (model.mode == ExcitationMode::ephemeral) {
            remove_ephemeral_anchor(p.id, t);
        }
        log.events.push_back(e);
    }

    void handle_reroute(int from, int to, double t) {
        auto& v = live[static_cast<std::size_t>(from)];
        std::size_t idx = static_cast<std::size_t>(rng.uniform() * v.size());
        if (idx >= v.size()) idx = v.size() - 1;
        Particle p = take_particle(from, idx);
        Event e;
        e.time = t;
        e.coordinate = to;
        e.from_coordinate = from;
        e.kind = EventKind::reroute;
        e.particle_id = p.id;
        log.events.push_back(e);
        live[static_cast<std::size_t>(to)].push_back(std::move(p));
        // reroutes do not excite and do not expire ephemeral anchors
    }

    void handle_scheduled_departure(int coord, std::int64_t pid, double t) {
        auto& v = live[static_cast<std::size_t>(coord)];
        auto it = std::find_if(v.begin(), v.end(), [&](const Particle& p) { return p.id == pid; });
        if (it == v.end()) return;
        Particle p = std::move(*it);
        *it = std::move(v.back());
        v.pop_back();
        Event e;
        e.time = t;
        e.coordinate = coord;
        e.kind = EventKind::departure;
        e.particle_id = p.id;
        if (model.mode == ExcitationMode::delayed) {
            install_anchor_now(coord, t, p.marks, false, p.id);
        } else if (model.mode == ExcitationMode::ephemeral) {
            remove_ephemeral_anchor(p.id, t);
        }
        log.events.push_back(e);
    }

    void run() {
        double t = 0.0;
        while (t < horizon) {
            std::vector<double> bound = intensity(t);
            double arr_bound = 0.0;
            for (double b : bound) arr_bound += b;
            double move_rate = 0.0;
            std::vector<double> dep_rate(static_cast<std::size_t>(model.d), 0.0);
            for (int j = 0; j < model.d; ++j) {
                if (model.semantics == ServiceSemantics::rate) {
                    double qj = static_cast<double>(live[static_cast<std::size_t>(j)].size());
                    dep_rate[static_cast<std::size_t>(j)] = model.total_service_rate(j) * qj;
                    move_rate += dep_rate[static_cast<std::size_t>(j)];
                }
            }
            double total = arr_bound + move_rate;
            double next_sched = sched.empty() ? kInf : sched.top().first;
            double t_cand = total > 0.0 ? t + sample_exponential(rng, total) : kInf;
            if (t_cand >= next_sched && next_sched <= horizon) {
                auto top = sched.top();
                sched.pop();
                t = next_sched;
                handle_scheduled_departure(top.second.first, top.second.second, t);
                continue;
            }
            if (t_cand > horizon) break;
            t = t_cand;
            double u = rng.uniform() * total;
            if (u < arr_bound) {
                // candidate arrival; locate coordinate, then thin
                int coord = 0;
                double acc = 0.0;
                for (; coord < model.d; ++coord) {
                    acc += bound[static_cast<std::size_t>(coord)];
                    if (u < acc) break;
                }
                if (coord >= model.d) coord = model.d - 1;
                double now = intensity(t)[static_cast<std::size_t>(coord)];
                double cap = bound[static_cast<std::size_t>(coord)];
                if (now > cap * (1.0 + 1e-9))
                    throw std::runtime_error("thinning bound violated (non-monotone realized kernel?)");
                if (rng.uniform() * cap <= now) handle_arrival(coord, t);
            } else {
                double v = u - arr_bound;
                int j = 0;
                for (; j < model.d; ++j) {
                    if (v < dep_rate[static_cast<std::size_t>(j)]) break;
                    v -= dep_rate[static_cast<std::size_t>(j)];
                }
                if (j >= model.d) j = model.d - 1;
                double qj = static_cast<double>(live[static_cast<std::size_t>(j)].size());
                // split between exit and reroutes proportionally to rates
                double exit_rate = model.mu[j] * qj;
                if (v < exit_rate) {
                    handle_rate_departure(j, t);
                } else {
                    v -= exit_rate;
                    int dest = 0;
                    for (; dest < model.d; ++dest) {
                        double rr = model.mu_route[dest][j] * qj;
                        if (v < rr) break;
                        v -= rr;
                    }
                    if (dest >= model.d) dest = model.d - 1;
                    handle_reroute(j, dest, t);
                }
            }
        }
        log.sort();
    }
};

void check_simulable(const NetworkModel& model) {
    validate_network(model);
    for (int i = 0; i < model.d; ++i)
        for (int j = 0; j < model.d; ++j)
            if (!model.kernels[i][j].nonincreasing())
                throw std::invalid_argument("kernel-not-monotone: thinning bound invalid");
    if (model.semantics == ServiceSemantics::scheduled && model.has_routing())
        throw std::invalid_argument("scheduled service semantics does not support rerouting");
    if (model.rate_maps) {
        for (const RateMap& m : *model.rate_maps)
            if (m.kind == RateMap::Kind::clamp || m.kind == RateMap::Kind::saturating)
                if (!(m.cap >= 0.0)) throw std::invalid_argument("rate map cap must be >= 0");
    }
}

}  // namespace

EventLog simulate_network(const NetworkModel& model, double horizon, RngStream rng) {
    check_simulable(model);
    if (!(horizon >= 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("simulate_network: horizon must be finite and >= 0");
    Engine eng(model, horizon, rng);
    eng.run();
    return std::move(eng.log);
}

EventLog simulate_nonlinear(const NetworkModel& model, double horizon, RngStream rng) {
    if (!model.rate_maps)
        throw std::invalid_argument("simulate_nonlinear: model has no rate maps");
    return simulate_network(model, horizon, rng);
}

}  // namespace hawkeslab
