#include "stratval/sequence.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "stratval/errors.hpp"
#include "stratval/io.hpp"

namespace stratval {

namespace {

void check_event(const SystemTrace& trace, const PredictionEvent& e) {
    if (e.first < 1 || e.first > e.last || e.last > trace.size())
        throw domain_error("event window [" + std::to_string(e.first) + ", " +
                           std::to_string(e.last) + "] out of range for a trace of length " +
                           std::to_string(trace.size()));
    if (e.predicted < 1 || e.predicted > trace.symbols())
        throw domain_error("predicted value " + std::to_string(e.predicted) +
                           " outside 1.." + std::to_string(trace.symbols()));
}

std::size_t favorable_count(const SystemTrace& trace, const PredictionEvent& e) {
    std::size_t count = 0;
    for (std::size_t pos = e.first; pos <= e.last; ++pos)
        count += trace.state_at(pos) == e.predicted ? 1 : 0;
    return count;
}

}  // namespace

SystemTrace::SystemTrace(std::vector<int> states, std::vector<std::int64_t> times, int symbols)
    : states_(std::move(states)), times_(std::move(times)), symbols_(symbols) {
    if (states_.empty()) throw domain_error("trace must contain at least one observation");
    if (states_.size() != times_.size())
        throw domain_error("state and time sequences must have equal length");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (times_[i] <= 0) throw domain_error("times must be positive");
        if (i > 0 && times_[i] <= times_[i - 1])
            throw domain_error("times must be strictly increasing");
    }
    int max_state = 0;
    for (int s : states_) {
        if (s < 1) throw domain_error("state values must be >= 1");
        max_state = std::max(max_state, s);
    }
    if (symbols_ == 0) symbols_ = max_state;
    if (symbols_ < max_state)
        throw domain_error("state values exceed the declared cardinality");
}

SystemTrace SystemTrace::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open trace file: " + path.string());

    std::vector<int> states;
    std::vector<std::int64_t> times;
    bool have_f = false, have_t = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = split_tokens(line);
        if (tokens.empty()) continue;
        const std::string& tag = tokens.front();
        if (tag != "F:" && tag != "T:")
            throw parse_error("expected a line starting with 'F:' or 'T:'", lineno);
        if (tokens.size() < 2) throw parse_error("empty value list", lineno);
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            long long v = 0;
            if (!parse_ll(tokens[i], v))
                throw parse_error("bad integer '" + tokens[i] + "'", lineno);
            if (tag == "F:")
                states.push_back(static_cast<int>(v));
            else
                times.push_back(v);
        }
        (tag == "F:" ? have_f : have_t) = true;
    }
    if (!have_f || !have_t)
        throw parse_error("trace file needs both an 'F:' and a 'T:' line in " + path.string());
    try {
        return SystemTrace(std::move(states), std::move(times));
    } catch (const domain_error& e) {
        throw parse_error(std::string(e.what()) + " in " + path.string());
    }
}

std::vector<std::int64_t> change_points(const SystemTrace& trace) {
    std::vector<std::int64_t> out;
    for (std::size_t pos = 2; pos <= trace.size(); ++pos)
        if (trace.state_at(pos) != trace.state_at(pos - 1))
            out.push_back(trace.time_at(pos));
    return out;
}

double event_random_prob(const SystemTrace& trace, const PredictionEvent& event) {
    check_event(trace, event);
    const auto width = static_cast<double>(event.last - event.first + 1);
    return static_cast<double>(favorable_count(trace, event)) / width;
}

Dependence classify_pair(const SystemTrace& trace, const PredictionEvent& first,
                         const PredictionEvent& second) {
    check_event(trace, first);
    check_event(trace, second);
    if (second.first < first.first)
        throw domain_error("events are out of order: the second starts before the first");
    // compare counts, not floats: probability 1 means every position matches
    const std::size_t width = second.last - second.first + 1;
    return favorable_count(trace, second) == width ? Dependence::Dependent
                                                  : Dependence::Independent;
}

TraceAnalysis analyze(const SystemTrace& trace, const std::vector<PredictionEvent>& events) {
    TraceAnalysis out;
    out.change_points = change_points(trace);
    double compound = 1.0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const PredictionEvent& e = events[i];
        check_event(trace, e);
        if (i > 0 && e.first < events[i - 1].first)
            throw domain_error("events must be ordered by window start");
        const std::size_t favorable = favorable_count(trace, e);
        if (favorable == 0)
            throw domain_error("event " + std::to_string(i + 1) +
                               " never won: value " + std::to_string(e.predicted) +
                               " does not occur in its window");

        EventAssessment a;
        a.event = e;
        const std::size_t width = e.last - e.first + 1;
        a.probability = static_cast<double>(favorable) / static_cast<double>(width);
        a.dependent_on_predecessors = i > 0 && favorable == width;
        for (std::size_t j = 0; j < i; ++j)
            if (e.first <= events[j].last && events[j].first <= e.last)
                a.overlaps_predecessor = true;
        a.contribution = a.dependent_on_predecessors ? 1.0 : a.probability;
        compound *= a.contribution;
        out.events.push_back(a);
    }
    out.compound_probability = compound;
    return out;
}

double compound_prob(const SystemTrace& trace, const std::vector<PredictionEvent>& events) {
    return analyze(trace, events).compound_probability;
}

std::vector<PredictionEvent> load_events(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open events file: " + path.string());

    std::vector<PredictionEvent> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = split_tokens(line);
        if (tokens.empty()) continue;
        long long a = 0, b = 0, v = 0;
        if (tokens.size() != 3 || !parse_ll(tokens[0], a) || !parse_ll(tokens[1], b) ||
            !parse_ll(tokens[2], v))
            throw parse_error("expected 'first last value'", lineno);
        if (a < 1 || b < a) throw parse_error("bad window bounds", lineno);
        if (v < 1) throw parse_error("predicted value must be >= 1", lineno);
        out.push_back(PredictionEvent{static_cast<std::size_t>(a), static_cast<std::size_t>(b),
                                      static_cast<int>(v)});
    }
    return out;
}

}  // namespace stratval
