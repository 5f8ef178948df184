#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stratval {

// One registered validation attempt: `successes` hits out of `predictions`
// tries against base probability `base_prob`, made by `agent` at `timestamp`.
struct AttemptRecord {
    std::string id;
    std::string agent;
    std::int64_t timestamp = 0;
    long long predictions = 0;
    long long successes = 0;
    double base_prob = 0.5;
    std::string note;
};

// Whose attempts count toward the correction: everyone, or a named set.
class KnowledgeScope {
public:
    static KnowledgeScope all() { return KnowledgeScope(true, {}); }
    static KnowledgeScope agents(std::set<std::string> names);

    bool is_all() const noexcept { return all_; }
    bool includes(const std::string& agent) const {
        return all_ || agents_.count(agent) > 0;
    }
    const std::set<std::string>& names() const noexcept { return agents_; }

private:
    KnowledgeScope(bool all, std::set<std::string> names)
        : all_(all), agents_(std::move(names)) {}
    bool all_;
    std::set<std::string> agents_;
};

struct UncertaintyBreakdown {
    double value = 0.0;         // best-of-m corrected equal-or-better probability
    double single = 0.0;        // uncorrected single-attempt probability
    long long attempts = 0;     // m
    bool heterogeneous = false; // counted attempts differ in size or base prob
};

// Append-only book of attempts.  An honest uncertainty for a result must
// count every attempt the evaluator knows about, not just the one that worked.
class HypothesisLedger {
public:
    // Adds a record; ids are unique (conflict_error on reuse).  Counts and
    // probabilities are validated like a BinomialQuery.
    void register_attempt(AttemptRecord record);

    bool contains(const std::string& id) const;
    const AttemptRecord& get(const std::string& id) const;  // not_found_error
    std::size_t size() const noexcept { return by_key_.size(); }

    // Records ordered by (timestamp, id).
    std::vector<AttemptRecord> records() const;

    // Equal-or-better probability of result `id` corrected for every attempt
    // inside `scope` with timestamp <= the result's own.  The result itself
    // always counts as one attempt even when its agent is out of scope.
    // Explicitly named agents must exist in the ledger (not_found_error).
    UncertaintyBreakdown uncertainty_detail(const std::string& id,
                                            const KnowledgeScope& scope) const;
    double uncertainty(const std::string& id, const KnowledgeScope& scope) const;

    // The reviewer's view: each result corrected against the full ledger,
    // then aggregated with combine_results at `cutoff`.
    double reviewer_combine(std::span<const std::string> ids, double cutoff = 0.05) const;

    // JSON-lines persistence, one record per line with keys
    // {id, agent, ts, n, k, p0, note}; unknown or missing keys are rejected
    // with the offending line number.  Saves go through write-then-rename so a
    // failed write never clobbers the previous file.
    static HypothesisLedger load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

private:
    using Key = std::pair<std::int64_t, std::string>;  // (timestamp, id)
    std::map<Key, AttemptRecord> by_key_;
    std::unordered_map<std::string, Key> id_index_;
};

}  // namespace stratval
