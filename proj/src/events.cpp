#include "hawkeslab/events.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hawkeslab {

std::string to_string(EventKind k) {
    switch (k) {
        case EventKind::arrival: return "arrival";
        case EventKind::departure: return "departure";
        case EventKind::reroute: return "reroute";
    }
    return "arrival";
}

void EventLog::sort() {
    std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.time != b.time) return a.time < b.time;
        return a.particle_id < b.particle_id;  // deterministic tie-break
    });
}

bool EventLog::sorted() const {
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i].time < events[i - 1].time) return false;
        if (events[i].time == events[i - 1].time &&
            events[i].particle_id < events[i - 1].particle_id)
            return false;
    }
    return true;
}

PathSample reconstruct_paths(const EventLog& log, const NetworkModel& model,
                             const std::vector<double>& grid) {
    if (!log.sorted()) throw std::invalid_argument("reconstruct_paths: unsorted-log");
    const int d = model.d;
    PathSample out;
    out.grid = grid;
    out.Q.assign(d, std::vector<double>(grid.size(), 0.0));
    out.N.assign(d, std::vector<double>(grid.size(), 0.0));
    out.Lambda.assign(d, std::vector<double>(grid.size(), 0.0));

    // Lifetimes for ephemeral expiry: scheduled service if present, else the
    // particle's departure epoch found in the log.
    std::unordered_map<std::int64_t, double> expiry;
    if (model.mode == ExcitationMode::ephemeral) {
        for (const Event& e : log.events) {
            if (e.kind == EventKind::arrival && e.service > 0.0)
                expiry[e.particle_id] = e.time + e.service;
            else if (e.kind == EventKind::departure)
                expiry.emplace(e.particle_id, e.time);
        }
    }

    std::unordered_map<std::int64_t, int> location;  // for reroute sources
    std::size_t next_event = 0;
    std::vector<double> q(d, 0.0), n(d, 0.0);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double t = grid[g];
        for (; next_event < log.events.size() && log.events[next_event].time <= t; ++next_event) {
            const Event& e = log.events[next_event];
            switch (e.kind) {
                case EventKind::arrival:
                    q[e.coordinate] += 1.0;
                    n[e.coordinate] += 1.0;
                    location[e.particle_id] = e.coordinate;
                    break;
                case EventKind::departure:
                    q[e.coordinate] -= 1.0;
                    location.erase(e.particle_id);
                    break;
                case EventKind::reroute: {
                    int from = e.from_coordinate;
                    if (from < 0) {
                        auto it = location.find(e.particle_id);
                        if (it == location.end())
                            throw std::invalid_argument("reroute references unknown particle");
                        from = it->second;
                    }
                    q[from] -= 1.0;
                    q[e.coordinate] += 1.0;
                    location[e.particle_id] = e.coordinate;
                    break;
                }
            }
        }
        for (int i = 0; i < d; ++i) {
            out.Q[i][g] = q[i];
            out.N[i][g] = n[i];
        }
        // Excitation: sum realized kernels over anchoring events.
        for (int i = 0; i < d; ++i) {
            double x = 0.0;
            for (std::size_t k = 0; k < next_event; ++k) {
                const Event& e = log.events[k];
                if (e.marks.empty()) continue;
                const int j = e.coordinate;
                const double m = e.marks[static_cast<std::size_t>(i)];
                double elapsed = -1.0;
                switch (model.mode) {
                    case ExcitationMode::hawkes:
                        elapsed = t - e.time;
                        break;
                    case ExcitationMode::delayed:
                        // arrival-anchored logs carry the service; departure
                        // events anchor directly
                        elapsed = e.kind == EventKind::arrival ? t - e.time - e.service
                                                               : t - e.time;
                        break;
                    case ExcitationMode::ephemeral: {
                        elapsed = t - e.time;
                        auto it = expiry.find(e.particle_id);
                        if (it != expiry.end() && t >= it->second) elapsed = -1.0;
                        break;
                    }
                }
                if (elapsed >= 0.0) x += m * model.kernels[i][j](elapsed);
            }
            out.Lambda[i][g] = model.rate_map(i).apply(model.lambda0[i], x);
        }
    }
    return out;
}

namespace {
std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace

void write_event_csv(std::ostream& os, const EventLog& log) {
    os << "time,coordinate,kind,mark,service,particle_id,parent_id\n";
    for (const Event& e : log.events) {
        os << format_double(e.time) << ',' << e.coordinate << ',' << to_string(e.kind) << ',';
        for (std::size_t i = 0; i < e.marks.size(); ++i) {
            if (i) os << ';';
            os << format_double(e.marks[i]);
        }
        os << ',' << format_double(e.service) << ',' << e.particle_id << ',';
        if (e.parent_id >= 0) os << e.parent_id;
        os << '\n';
    }
}

EventLog read_event_csv(std::istream& is) {
    EventLog log;
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("event csv: missing header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        Event e;
        std::getline(ss, field, ',');
        e.time = std::stod(field);
        std::getline(ss, field, ',');
        e.coordinate = std::stoi(field);
        std::getline(ss, field, ',');
        if (field == "arrival") e.kind = EventKind::arrival;
        else if (field == "departure") e.kind = EventKind::departure;
        else if (field == "reroute") e.kind = EventKind::reroute;
        else throw std::invalid_argument("event csv: unknown kind " + field);
        std::getline(ss, field, ',');
        if (!field.empty()) {
            std::stringstream ms(field);
            std::string part;
            while (std::getline(ms, part, ';')) e.marks.push_back(std::stod(part));
        }
        std::getline(ss, field, ',');
        e.service = std::stod(field);
        std::getline(ss, field, ',');
        e.particle_id = std::stoll(field);
        std::getline(ss, field, ',');
        e.parent_id = field.empty() ? -1 : std::stoll(field);
        log.events.push_back(std::move(e));
        log.d = std::max(log.d, log.events.back().coordinate + 1);
        if (!log.events.back().marks.empty())
            log.d = std::max<int>(log.d, static_cast<int>(log.events.back().marks.size()));
    }
    if (!log.events.empty()) log.horizon = log.events.back().time;
    return log;
}

}  // namespace hawkeslab
