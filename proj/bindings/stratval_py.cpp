// python module `stratval._core`: the library's main operations, bound thin.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <set>
#include <string>
#include <vector>

#include "stratval/binomial.hpp"
#include "stratval/ledger.hpp"
#include "stratval/monte_carlo.hpp"
#include "stratval/occam.hpp"
#include "stratval/sequence.hpp"
#include "stratval/strategy.hpp"

namespace py = pybind11;
using namespace stratval;

PYBIND11_MODULE(_core, m) {
    m.doc() = "strategy validation: equal-or-better probabilities, attempt "
              "corrections, and trading-gate replay";
    m.attr("__version__") = "0.1.0";

    // ---- probability kernel
    m.def(
        "binom_pmf",
        [](long long k, long long n, double p) { return binom_pmf({k, n, p}); },
        py::arg("successes"), py::arg("trials"), py::arg("base_prob"),
        "P[X == k] for X ~ Binomial(n, p)");
    m.def(
        "binom_cdf",
        [](long long k, long long n, double p) { return binom_cdf({k, n, p}); },
        py::arg("successes"), py::arg("trials"), py::arg("base_prob"),
        "P[X <= k]");
    m.def(
        "binom_sf",
        [](long long k, long long n, double p) { return binom_sf({k, n, p}); },
        py::arg("successes"), py::arg("trials"), py::arg("base_prob"),
        "P[X >= k]: the equal-or-better probability of a score");
    m.def(
        "best_of_m",
        [](long long k, long long n, double p, long long attempts) {
            return best_of_m(BinomialQuery{k, n, p}, attempts);
        },
        py::arg("successes"), py::arg("trials"), py::arg("base_prob"),
        py::arg("attempts"),
        "chance the best of m independent attempts reaches an equal-or-better score");
    m.def(
        "best_of_m",
        [](double single_prob, long long attempts) {
            return best_of_m(single_prob, attempts);
        },
        py::arg("single_prob"), py::arg("attempts"),
        "same correction applied to an already-computed probability");
    m.def("intersect", &intersect, py::arg("p1"), py::arg("p2"),
          "joint probability of two independent random successes");
    m.def(
        "combine_results",
        [](const std::vector<double>& probs, double cutoff) {
            return combine_results(probs, cutoff);
        },
        py::arg("probabilities"), py::arg("cutoff") = 0.05,
        "intersect informative results; uninformative ones widen the attempt count");
    m.def(
        "wilson_interval",
        [](long long successes, long long trials, double confidence) {
            const auto iv = wilson_interval(successes, trials, confidence);
            return py::make_tuple(iv.first, iv.second);
        },
        py::arg("successes"), py::arg("trials"), py::arg("confidence") = 0.95,
        "Wilson score interval for a proportion");

    // ---- Monte Carlo engine
    py::enum_<TailComparison>(m, "TailComparison")
        .value("GreaterEqual", TailComparison::GreaterEqual)
        .value("Greater", TailComparison::Greater);
    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("point", &McEstimate::point)
        .def_readonly("lower", &McEstimate::lower)
        .def_readonly("upper", &McEstimate::upper)
        .def_readonly("hits", &McEstimate::hits)
        .def_readonly("replicates", &McEstimate::replicates)
        .def_readonly("master_seed", &McEstimate::master_seed)
        .def_readonly("confidence", &McEstimate::confidence)
        .def("__repr__", [](const McEstimate& e) {
            return "McEstimate(point=" + std::to_string(e.point) + ", hits=" +
                   std::to_string(e.hits) + "/" + std::to_string(e.replicates) + ")";
        });
    m.def("derive_replicate_seed", &derive_replicate_seed, py::arg("master"),
          py::arg("index"), "seed of one replicate; pure in (master, index)");
    m.def(
        "run_replicates",
        [](long long trials, double prob, long long threshold, std::uint64_t replicates,
           std::uint64_t seed, int threads, TailComparison comparison) {
            return run_replicates({trials, prob, threshold, comparison}, replicates,
                                  seed, threads);
        },
        py::arg("trials"), py::arg("success_prob"), py::arg("threshold"),
        py::arg("replicates"), py::arg("seed"), py::arg("threads") = 1,
        py::arg("comparison") = TailComparison::GreaterEqual,
        "hit count alone; identical for every thread count");
    m.def(
        "estimate_equal_or_better",
        [](long long trials, double prob, long long threshold, std::uint64_t replicates,
           std::uint64_t seed, double confidence, int threads, TailComparison comparison) {
            return estimate_equal_or_better({trials, prob, threshold, comparison},
                                            replicates, seed, confidence, threads);
        },
        py::arg("trials"), py::arg("success_prob"), py::arg("threshold"),
        py::arg("replicates"), py::arg("seed"), py::arg("confidence") = 0.95,
        py::arg("threads") = 1,
        py::arg("comparison") = TailComparison::GreaterEqual,
        "Monte Carlo twin of binom_sf, with a Wilson interval");

    // ---- hypothesis ledger
    py::class_<AttemptRecord>(m, "AttemptRecord")
        .def(py::init([](std::string id, std::string agent, std::int64_t ts,
                         long long predictions, long long successes, double base_prob,
                         std::string note) {
                 return AttemptRecord{std::move(id), std::move(agent), ts, predictions,
                                      successes, base_prob, std::move(note)};
             }),
             py::arg("id"), py::arg("agent"), py::arg("ts"), py::arg("predictions"),
             py::arg("successes"), py::arg("base_prob"), py::arg("note") = std::string())
        .def_readwrite("id", &AttemptRecord::id)
        .def_readwrite("agent", &AttemptRecord::agent)
        .def_readwrite("ts", &AttemptRecord::timestamp)
        .def_readwrite("predictions", &AttemptRecord::predictions)
        .def_readwrite("successes", &AttemptRecord::successes)
        .def_readwrite("base_prob", &AttemptRecord::base_prob)
        .def_readwrite("note", &AttemptRecord::note);
    py::class_<KnowledgeScope>(m, "KnowledgeScope")
        .def_static("all", &KnowledgeScope::all)
        .def_static(
            "agents",
            [](const std::vector<std::string>& names) {
                return KnowledgeScope::agents({names.begin(), names.end()});
            },
            py::arg("names"));
    py::class_<UncertaintyBreakdown>(m, "UncertaintyBreakdown")
        .def_readonly("value", &UncertaintyBreakdown::value)
        .def_readonly("single", &UncertaintyBreakdown::single)
        .def_readonly("attempts", &UncertaintyBreakdown::attempts)
        .def_readonly("heterogeneous", &UncertaintyBreakdown::heterogeneous);
    py::class_<HypothesisLedger>(m, "HypothesisLedger")
        .def(py::init<>())
        .def("register_attempt", &HypothesisLedger::register_attempt, py::arg("record"))
        .def("contains", &HypothesisLedger::contains, py::arg("id"))
        .def("get", &HypothesisLedger::get, py::arg("id"))
        .def("__len__", &HypothesisLedger::size)
        .def("records", &HypothesisLedger::records)
        .def("uncertainty", &HypothesisLedger::uncertainty, py::arg("id"),
             py::arg("scope"))
        .def("uncertainty_detail", &HypothesisLedger::uncertainty_detail, py::arg("id"),
             py::arg("scope"))
        .def(
            "reviewer_combine",
            [](const HypothesisLedger& ledger, const std::vector<std::string>& ids,
               double cutoff) { return ledger.reviewer_combine(ids, cutoff); },
            py::arg("ids"), py::arg("cutoff") = 0.05)
        .def_static("load", &HypothesisLedger::load, py::arg("path"))
        .def("save", &HypothesisLedger::save, py::arg("path"));

    // ---- occam space
    py::class_<SequenceSpace>(m, "SequenceSpace")
        .def(py::init([](int symbols, int length, std::uint64_t budget) {
                 return SequenceSpace{symbols, length, budget};
             }),
             py::arg("symbols"), py::arg("length"),
             py::arg("enumeration_budget") = (1ull << 24))
        .def_readwrite("symbols", &SequenceSpace::symbols)
        .def_readwrite("length", &SequenceSpace::length)
        .def("size", &SequenceSpace::size);
    py::class_<Hypothesis>(m, "Hypothesis")
        .def_static(
            "from_rule",
            [](std::int64_t time, const std::function<bool(std::vector<int>)>& rule) {
                return Hypothesis::from_rule(time, [rule](std::span<const int> s) {
                    return rule(std::vector<int>(s.begin(), s.end()));
                });
            },
            py::arg("time"), py::arg("rule"))
        .def_static("from_sequences", &Hypothesis::from_sequences, py::arg("time"),
                    py::arg("space"), py::arg("sequences"))
        .def_readonly("time", &Hypothesis::time);
    m.def("admitted_count", &admitted_count, py::arg("hypothesis"), py::arg("space"));
    m.def("admitted_union_count", &admitted_union_count, py::arg("history"),
          py::arg("space"));
    m.def("random_predict_prob", &random_predict_prob, py::arg("history"),
          py::arg("space"));
    m.def("prob_true", &prob_true, py::arg("history"), py::arg("space"));
    py::enum_<Preference>(m, "Preference")
        .value("First", Preference::First)
        .value("Second", Preference::Second)
        .value("Tie", Preference::Tie);
    py::class_<HypothesisComparison>(m, "HypothesisComparison")
        .def_readonly("space_size", &HypothesisComparison::space_size)
        .def_readonly("last_count_1", &HypothesisComparison::last_count_1)
        .def_readonly("last_count_2", &HypothesisComparison::last_count_2)
        .def_readonly("union_count_1", &HypothesisComparison::union_count_1)
        .def_readonly("union_count_2", &HypothesisComparison::union_count_2)
        .def_readonly("random_prob_1", &HypothesisComparison::random_prob_1)
        .def_readonly("random_prob_2", &HypothesisComparison::random_prob_2)
        .def_readonly("case_number", &HypothesisComparison::case_number)
        .def_readonly("preferred", &HypothesisComparison::preferred)
        .def_readonly("summary", &HypothesisComparison::summary);
    m.def("compare_histories", &compare_histories, py::arg("first"), py::arg("second"),
          py::arg("space"));
    py::class_<HypothesisFile>(m, "HypothesisFile")
        .def_readonly("space", &HypothesisFile::space)
        .def_readonly("sequences", &HypothesisFile::sequences);
    m.def("load_hypothesis_file", &load_hypothesis_file, py::arg("path"));

    // ---- non-stationary traces
    py::class_<SystemTrace>(m, "SystemTrace")
        .def(py::init<std::vector<int>, std::vector<std::int64_t>, int>(),
             py::arg("states"), py::arg("times"), py::arg("symbols") = 0)
        .def_static("load", &SystemTrace::load, py::arg("path"))
        .def_property_readonly("states", &SystemTrace::states)
        .def_property_readonly("times", &SystemTrace::times)
        .def_property_readonly("symbols", &SystemTrace::symbols)
        .def("__len__", &SystemTrace::size);
    py::class_<PredictionEvent>(m, "PredictionEvent")
        .def(py::init([](std::size_t first, std::size_t last, int predicted) {
                 return PredictionEvent{first, last, predicted};
             }),
             py::arg("first"), py::arg("last"), py::arg("predicted"))
        .def_readwrite("first", &PredictionEvent::first)
        .def_readwrite("last", &PredictionEvent::last)
        .def_readwrite("predicted", &PredictionEvent::predicted);
    py::enum_<Dependence>(m, "Dependence")
        .value("Dependent", Dependence::Dependent)
        .value("Independent", Dependence::Independent);
    m.def("change_points", &change_points, py::arg("trace"),
          "times at which the state changes");
    m.def("event_random_prob", &event_random_prob, py::arg("trace"), py::arg("event"));
    m.def("classify_pair", &classify_pair, py::arg("trace"), py::arg("first"),
          py::arg("second"));
    py::class_<EventAssessment>(m, "EventAssessment")
        .def_readonly("event", &EventAssessment::event)
        .def_readonly("probability", &EventAssessment::probability)
        .def_readonly("dependent_on_predecessors",
                      &EventAssessment::dependent_on_predecessors)
        .def_readonly("overlaps_predecessor", &EventAssessment::overlaps_predecessor)
        .def_readonly("contribution", &EventAssessment::contribution);
    py::class_<TraceAnalysis>(m, "TraceAnalysis")
        .def_readonly("change_points", &TraceAnalysis::change_points)
        .def_readonly("events", &TraceAnalysis::events)
        .def_readonly("compound_probability", &TraceAnalysis::compound_probability);
    m.def("compound_prob", &compound_prob, py::arg("trace"), py::arg("events"));
    m.def("analyze", &analyze, py::arg("trace"), py::arg("events"));
    m.def("load_events", &load_events, py::arg("path"));

    // ---- strategy scoring
    py::enum_<Direction>(m, "Direction")
        .value("Long", Direction::Long)
        .value("Short", Direction::Short);
    py::enum_<Outcome>(m, "Outcome")
        .value("Win", Outcome::Win)
        .value("Loss", Outcome::Loss);
    py::enum_<TradingMode>(m, "TradingMode")
        .value("Live", TradingMode::Live)
        .value("Virtual", TradingMode::Virtual);
    py::class_<TradeRecord>(m, "TradeRecord")
        .def(py::init([](long long open, long long close, Direction direction,
                         Outcome outcome) {
                 return TradeRecord{open, close, direction, outcome, std::nullopt};
             }),
             py::arg("open_index"), py::arg("close_index"), py::arg("direction"),
             py::arg("outcome"))
        .def_readwrite("open_index", &TradeRecord::open_index)
        .def_readwrite("close_index", &TradeRecord::close_index)
        .def_readwrite("direction", &TradeRecord::direction)
        .def_readwrite("outcome", &TradeRecord::outcome)
        .def_readwrite("size", &TradeRecord::size);
    m.def("load_trades", &load_trades, py::arg("path"));
    py::class_<PriceSeries>(m, "PriceSeries")
        .def(py::init<std::vector<std::string>, std::vector<double>>(),
             py::arg("labels"), py::arg("closes"))
        .def_static("load", &PriceSeries::load, py::arg("path"))
        .def_property_readonly("labels", &PriceSeries::labels)
        .def_property_readonly("closes", &PriceSeries::closes)
        .def("__len__", &PriceSeries::size);
    m.def("baseline_win_prob", &baseline_win_prob, py::arg("prices"),
          py::arg("direction"));
    m.def("track_record_uncertainty", &track_record_uncertainty, py::arg("trades"),
          py::arg("base_prob"), py::arg("attempts") = 1,
          py::arg("comparison") = TailComparison::GreaterEqual,
          "chance the best of m blind strategies does as well as this win count");
    py::class_<ControlState>(m, "ControlState")
        .def_readonly("window_capacity", &ControlState::window_capacity)
        .def_readonly("threshold", &ControlState::threshold)
        .def_readonly("base_prob", &ControlState::base_prob)
        .def_readonly("mode", &ControlState::mode)
        .def_readonly("rolling_prob", &ControlState::rolling_prob);
    m.def("make_control_state", &make_control_state, py::arg("window_capacity"),
          py::arg("threshold"), py::arg("base_prob"));
    m.def("control_step", &control_step, py::arg("state"), py::arg("outcome"));
    py::class_<StPetersburgReport>(m, "StPetersburgReport")
        .def_readonly("tosses", &StPetersburgReport::tosses)
        .def_readonly("expected_value", &StPetersburgReport::expected_value)
        .def_readonly("average_bet", &StPetersburgReport::average_bet)
        .def_readonly("beat_prob", &StPetersburgReport::beat_prob)
        .def_readonly("boundary", &StPetersburgReport::boundary);
    m.def("st_petersburg_ev", &st_petersburg_ev, py::arg("tosses"));
    m.def("st_petersburg_ab", &st_petersburg_ab, py::arg("tosses"));
    m.def("st_petersburg_beat_prob", &st_petersburg_beat_prob, py::arg("tosses"));
    m.def("st_petersburg_report", &st_petersburg_report, py::arg("tosses"));
    m.def("random_equity_line", &random_equity_line, py::arg("prices"),
          py::arg("master_seed"));
    m.def("equity_uncertainty", &equity_uncertainty, py::arg("final_equity"),
          py::arg("prices"), py::arg("replicates"), py::arg("master_seed"),
          py::arg("confidence") = 0.95, py::arg("threads") = 1);
    m.def("oracle_final_equity", &oracle_final_equity, py::arg("prices"));
}
