#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace stratval {

// Observed path of a non-stationary system: state values over an integer
// clock.  States are 1-based symbols in 1..symbols.
class SystemTrace {
public:
    // symbols == 0 deduces the cardinality as max(states)
    SystemTrace(std::vector<int> states, std::vector<std::int64_t> times, int symbols = 0);

    // Trace file: a line `F: v1 v2 ...` and a line `T: t1 t2 ...`.
    static SystemTrace load(const std::filesystem::path& path);

    const std::vector<int>& states() const noexcept { return states_; }
    const std::vector<std::int64_t>& times() const noexcept { return times_; }
    int symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return states_.size(); }

    // 1-based access
    int state_at(std::size_t pos) const { return states_[pos - 1]; }
    std::int64_t time_at(std::size_t pos) const { return times_[pos - 1]; }

private:
    std::vector<int> states_;
    std::vector<std::int64_t> times_;
    int symbols_;
};

// A realized bet: the state takes `predicted` somewhere inside positions
// [first, last] of the trace (1-based, inclusive).
struct PredictionEvent {
    std::size_t first = 1;
    std::size_t last = 1;
    int predicted = 1;
};

// Times T[i] at which the state differs from the previous observation.
std::vector<std::int64_t> change_points(const SystemTrace& trace);

// Probability that a blind draw over the event's window hits the predicted
// value: favorable positions / window width.
double event_random_prob(const SystemTrace& trace, const PredictionEvent& event);

enum class Dependence { Dependent, Independent };

// `second` is dependent when its window admits only the predicted value
// (random probability 1): winning it was implied, it adds no evidence.
// Requires second.first >= first.first.
Dependence classify_pair(const SystemTrace& trace, const PredictionEvent& first,
                         const PredictionEvent& second);

struct EventAssessment {
    PredictionEvent event;
    double probability = 0.0;            // this event's blind-draw probability
    bool dependent_on_predecessors = false;
    bool overlaps_predecessor = false;   // windows intersect an earlier event's
    double contribution = 1.0;           // factor applied to the compound value
};

struct TraceAnalysis {
    std::vector<std::int64_t> change_points;
    std::vector<EventAssessment> events;
    double compound_probability = 1.0;
};

// Blind-luck probability of the whole winning record: the product over
// events that are independent of their predecessors; dependent events
// multiply by 1.  Events must be ordered by window start and must all have
// actually won (favorable count >= 1).
double compound_prob(const SystemTrace& trace, const std::vector<PredictionEvent>& events);

// compound_prob plus the per-event detail the reports print.
TraceAnalysis analyze(const SystemTrace& trace, const std::vector<PredictionEvent>& events);

// Events file: one `first last value` triple per line.
std::vector<PredictionEvent> load_events(const std::filesystem::path& path);

}  // namespace stratval
