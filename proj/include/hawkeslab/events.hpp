#ifndef HAWKESLAB_EVENTS_HPP
#define HAWKESLAB_EVENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hawkeslab/model.hpp"

namespace hawkeslab {

enum class EventKind { arrival, departure, reroute };

std::string to_string(EventKind k);

/**
 * One state change of the network. Arrivals carry the service draw (when
 * scheduled) and, on the excitation-triggering event for the active mode,
 * the realized per-target marks. Reroutes record source and destination.
 */
struct Event {
    double time = 0.0;
    int coordinate = 0;           // destination coordinate for reroutes
    EventKind kind = EventKind::arrival;
    std::vector<double> marks;    // per-target marks, empty when not triggering
    double service = 0.0;         // scheduled lifetime; 0 under rate semantics
    std::int64_t particle_id = 0;
    std::int64_t parent_id = -1;  // genealogy, cluster simulation only
    int from_coordinate = -1;     // reroute source
};

/// Time-ordered record of a single trajectory plus seed metadata.
struct EventLog {
    std::vector<Event> events;
    double horizon = 0.0;
    int d = 1;
    std::uint64_t seed = 0;

    void sort();
    bool sorted() const;
};

/// Grid evaluation of (Q, N, Lambda) reconstructed from a log.
struct PathSample {
    std::vector<double> grid;
    std::vector<std::vector<double>> Q;       // [coord][grid]
    std::vector<std::vector<double>> N;       // external arrivals only
    std::vector<std::vector<double>> Lambda;  // [coord][grid]
};

/// Evaluate Q, N and Lambda on a grid. Lambda is rebuilt by summing the
/// realized excitation functions anchored at the mode-appropriate epochs
/// plus the baseline, through the model's rate map when one is present.
PathSample reconstruct_paths(const EventLog& log, const NetworkModel& model,
                             const std::vector<double>& grid);

/// CSV with columns: time,coordinate,kind,mark,service,particle_id,parent_id.
/// Multivariate marks are joined with ';' inside the mark field.
void write_event_csv(std::ostream& os, const EventLog& log);
EventLog read_event_csv(std::istream& is);

}  // namespace hawkeslab

#endif
