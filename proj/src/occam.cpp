#include "stratval/occam.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "stratval/errors.hpp"
#include "stratval/io.hpp"

namespace stratval {

namespace {

void check_space(const SequenceSpace& space) {
    if (space.symbols < 2) throw domain_error("symbol cardinality must be >= 2");
    if (space.length < 1) throw domain_error("sequence length must be >= 1");
}

// decodes index into digits[0..N), least significant observation first
void decode(std::uint64_t index, const SequenceSpace& space, std::vector<int>& digits) {
    const auto c = static_cast<std::uint64_t>(space.symbols);
    for (int j = 0; j < space.length; ++j) {
        digits[static_cast<std::size_t>(j)] = static_cast<int>(index % c);
        index /= c;
    }
}

std::uint64_t encode(std::span<const int> seq, const SequenceSpace& space) {
    const auto c = static_cast<std::uint64_t>(space.symbols);
    std::uint64_t index = 0;
    for (std::size_t j = seq.size(); j-- > 0;)
        index = index * c + static_cast<std::uint64_t>(seq[j]);
    return index;
}

void check_history(const HypothesisHistory& history) {
    if (history.empty()) throw domain_error("hypothesis history must not be empty");
    for (std::size_t i = 0; i < history.size(); ++i) {
        if (!history[i].admits) throw domain_error("hypothesis predicate must be callable");
        if (i > 0 && history[i].time <= history[i - 1].time)
            throw domain_error("hypothesis times must be strictly increasing");
    }
}

}  // namespace

std::uint64_t SequenceSpace::size() const {
    check_space(*this);
    std::uint64_t n = 1;
    for (int j = 0; j < length; ++j) {
        if (n > enumeration_budget / static_cast<std::uint64_t>(symbols))
            throw budget_error("sequence space exceeds the enumeration budget");
        n *= static_cast<std::uint64_t>(symbols);
    }
    if (n > enumeration_budget)
        throw budget_error("sequence space exceeds the enumeration budget");
    return n;
}

Hypothesis Hypothesis::from_rule(std::int64_t time, SequencePredicate rule) {
    if (!rule) throw domain_error("hypothesis predicate must be callable");
    return Hypothesis{time, std::move(rule)};
}

Hypothesis Hypothesis::from_sequences(std::int64_t time, const SequenceSpace& space,
                                      const std::vector<std::vector<int>>& sequences) {
    check_space(space);
    auto admitted = std::make_shared<std::set<std::uint64_t>>();
    for (const auto& seq : sequences) {
        if (seq.size() != static_cast<std::size_t>(space.length))
            throw domain_error("sequence length does not match the space");
        for (int s : seq)
            if (s < 0 || s >= space.symbols)
                throw domain_error("sequence symbol out of range");
        admitted->insert(encode(seq, space));
    }
    SequenceSpace captured = space;
    return Hypothesis{time, [admitted, captured](std::span<const int> seq) {
                          return admitted->count(encode(seq, captured)) > 0;
                      }};
}

std::uint64_t admitted_count(const Hypothesis& h, const SequenceSpace& space) {
    if (!h.admits) throw domain_error("hypothesis predicate must be callable");
    const std::uint64_t n = space.size();
    std::vector<int> digits(static_cast<std::size_t>(space.length));
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        decode(i, space, digits);
        if (h.admits(digits)) ++count;
    }
    return count;
}

std::uint64_t admitted_union_count(const HypothesisHistory& history,
                                   const SequenceSpace& space) {
    check_history(history);
    const std::uint64_t n = space.size();
    std::vector<bool> admitted(n, false);
    std::vector<int> digits(static_cast<std::size_t>(space.length));
    std::uint64_t count = 0;
    for (const auto& h : history) {
        for (std::uint64_t i = 0; i < n; ++i) {
            if (admitted[i]) continue;  // each sequence counts once
            decode(i, space, digits);
            if (h.admits(digits)) {
                admitted[i] = true;
                ++count;
            }
        }
    }
    return count;
}

double random_predict_prob(const HypothesisHistory& history, const SequenceSpace& space) {
    return static_cast<double>(admitted_union_count(history, space)) /
           static_cast<double>(space.size());
}

double prob_true(const HypothesisHistory& history, const SequenceSpace& space) {
    return 1.0 - random_predict_prob(history, space);
}

HypothesisComparison compare_histories(const HypothesisHistory& h1,
                                       const HypothesisHistory& h2,
                                       const SequenceSpace& space) {
    check_history(h1);
    check_history(h2);

    HypothesisComparison cmp;
    cmp.space_size = space.size();
    cmp.last_count_1 = admitted_count(h1.back(), space);
    cmp.last_count_2 = admitted_count(h2.back(), space);
    cmp.union_count_1 = admitted_union_count(h1, space);
    cmp.union_count_2 = admitted_union_count(h2, space);
    cmp.random_prob_1 =
        static_cast<double>(cmp.union_count_1) / static_cast<double>(cmp.space_size);
    cmp.random_prob_2 =
        static_cast<double>(cmp.union_count_2) / static_cast<double>(cmp.space_size);

    const bool last_tie = cmp.last_count_1 == cmp.last_count_2;
    const bool union_tie = cmp.union_count_1 == cmp.union_count_2;
    if (last_tie || union_tie) {
        cmp.case_number = 0;
    } else if (cmp.last_count_1 > cmp.last_count_2) {
        cmp.case_number = cmp.union_count_1 > cmp.union_count_2 ? 1 : 2;
    } else {
        cmp.case_number = cmp.union_count_1 < cmp.union_count_2 ? 3 : 4;
    }

    if (!union_tie) {
        cmp.preferred =
            cmp.union_count_1 < cmp.union_count_2 ? Preference::First : Preference::Second;
    } else if (!last_tie) {
        cmp.preferred =
            cmp.last_count_1 < cmp.last_count_2 ? Preference::First : Preference::Second;
    } else {
        cmp.preferred = Preference::Tie;
    }

    std::ostringstream os;
    os << "latest " << cmp.last_count_1 << " vs " << cmp.last_count_2 << ", history union "
       << cmp.union_count_1 << " vs " << cmp.union_count_2 << " of " << cmp.space_size << ": ";
    switch (cmp.preferred) {
        case Preference::First: os << "prefer the first"; break;
        case Preference::Second: os << "prefer the second"; break;
        case Preference::Tie: os << "tie"; break;
    }
    if (union_tie && !last_tie) os << " (equal histories, simpler current hypothesis)";
    cmp.summary = os.str();
    return cmp;
}

HypothesisFile load_hypothesis_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open hypothesis file: " + path.string());

    HypothesisFile out;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = split_tokens(line);
        if (tokens.empty()) continue;
        if (!have_header) {
            long long c = 0, n = 0;
            if (tokens.size() != 2 || tokens[0].rfind("C=", 0) != 0 ||
                tokens[1].rfind("N=", 0) != 0 || !parse_ll(tokens[0].substr(2), c) ||
                !parse_ll(tokens[1].substr(2), n))
                throw parse_error("expected header 'C=<symbols> N=<length>'", lineno);
            if (c < 2) throw parse_error("symbol cardinality must be >= 2", lineno);
            if (n < 1) throw parse_error("sequence length must be >= 1", lineno);
            out.space.symbols = static_cast<int>(c);
            out.space.length = static_cast<int>(n);
            have_header = true;
            continue;
        }
        if (tokens.size() != static_cast<std::size_t>(out.space.length))
            throw parse_error("expected " + std::to_string(out.space.length) + " symbols, got " +
                                  std::to_string(tokens.size()),
                              lineno);
        std::vector<int> seq;
        seq.reserve(tokens.size());
        for (const auto& tok : tokens) {
            long long v = 0;
            if (!parse_ll(tok, v) || v < 0 || v >= out.space.symbols)
                throw parse_error("symbol '" + tok + "' out of range 0.." +
                                      std::to_string(out.space.symbols - 1),
                                  lineno);
            seq.push_back(static_cast<int>(v));
        }
        out.sequences.push_back(std::move(seq));
    }
    if (!have_header) throw parse_error("missing 'C=<symbols> N=<length>' header in " + path.string());
    return out;
}

}  // namespace stratval
