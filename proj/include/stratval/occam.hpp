#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace stratval {

// The universe of discrete system behaviours: every length-`length` sequence
// over symbols 0..symbols-1.  Operations enumerate all of it, so its size is
// capped by `enumeration_budget`.
struct SequenceSpace {
    int symbols = 2;      // >= 2
    int length = 1;       // >= 1
    std::uint64_t enumeration_budget = 1ull << 24;

    // symbols^length; budget_error when it exceeds the budget.
    std::uint64_t size() const;
};

using SequencePredicate = std::function<bool(std::span<const int>)>;

// A hypothesis held at `time`: the set of future behaviours it admits,
// given as a membership predicate over whole sequences.
struct Hypothesis {
    std::int64_t time = 0;
    SequencePredicate admits;

    static Hypothesis from_rule(std::int64_t time, SequencePredicate rule);
    // Explicit admitted set; sequences are validated against the space.
    static Hypothesis from_sequences(std::int64_t time, const SequenceSpace& space,
                                     const std::vector<std::vector<int>>& sequences);
};

// Hypotheses held over time; times must be strictly increasing.
using HypothesisHistory = std::vector<Hypothesis>;

// Number of sequences the hypothesis admits.
std::uint64_t admitted_count(const Hypothesis& h, const SequenceSpace& space);

// Size of the union of admitted sets over the whole history: behaviours
// consistent with the forecaster ever having looked right.
std::uint64_t admitted_union_count(const HypothesisHistory& history,
                                   const SequenceSpace& space);

// Probability that a blindly drawn behaviour keeps the history looking
// right: union count / space size.
double random_predict_prob(const HypothesisHistory& history, const SequenceSpace& space);

// Complement: the probability the history reflects something real.
// random_predict_prob + prob_true == 1.0 exactly.
double prob_true(const HypothesisHistory& history, const SequenceSpace& space);

enum class Preference { First, Second, Tie };

struct HypothesisComparison {
    std::uint64_t space_size = 0;
    std::uint64_t last_count_1 = 0;   // admitted count of the latest hypothesis
    std::uint64_t last_count_2 = 0;
    std::uint64_t union_count_1 = 0;  // admitted union over the history
    std::uint64_t union_count_2 = 0;
    double random_prob_1 = 0.0;
    double random_prob_2 = 0.0;
    // Strict-inequality cases over (last_count, union_count):
    //   1: 1 admits more now and over its history   -> prefer 2
    //   2: 1 admits more now, less over its history -> prefer 1
    //   3: 1 admits less now and over its history   -> prefer 1
    //   4: 1 admits less now, more over its history -> prefer 2
    // 0 when either measure ties.
    int case_number = 0;
    Preference preferred = Preference::Tie;
    std::string summary;
};

// Ranks two forecasters over the same space.  The smaller admitted union
// wins (it leaves less room for accidental success); with equal unions the
// smaller current hypothesis wins; equal on both counts is a tie.  Note a
// simpler current hypothesis can still lose on the weight of its history.
HypothesisComparison compare_histories(const HypothesisHistory& h1,
                                       const HypothesisHistory& h2,
                                       const SequenceSpace& space);

// File format: first non-empty line `C=<symbols> N=<length>`, then one
// admitted sequence per line as N whitespace-separated symbols in 0..C-1.
struct HypothesisFile {
    SequenceSpace space;
    std::vector<std::vector<int>> sequences;
};
HypothesisFile load_hypothesis_file(const std::filesystem::path& path);

}  // namespace stratval
