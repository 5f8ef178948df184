#include "stratval/ledger.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stratval/binomial.hpp"
#include "stratval/errors.hpp"
#include "stratval/io.hpp"

namespace stratval {

namespace {

void check_record(const AttemptRecord& r) {
    if (r.id.empty()) throw domain_error("record id must not be empty");
    if (r.agent.empty()) throw domain_error("agent name must not be empty");
    if (r.predictions < 1)
        throw domain_error("record '" + r.id + "': prediction count must be >= 1");
    if (r.successes < 0 || r.successes > r.predictions)
        throw domain_error("record '" + r.id + "': successes must lie in [0, predictions]");
    if (!(r.base_prob >= 0.0 && r.base_prob <= 1.0))
        throw domain_error("record '" + r.id + "': base probability must lie in [0, 1]");
}

const char* const kRecordKeys[] = {"id", "agent", "ts", "n", "k", "p0", "note"};

}  // namespace

KnowledgeScope KnowledgeScope::agents(std::set<std::string> names) {
    if (names.empty()) throw domain_error("agent scope must name at least one agent");
    return KnowledgeScope(false, std::move(names));
}

void HypothesisLedger::register_attempt(AttemptRecord record) {
    check_record(record);
    if (id_index_.count(record.id))
        throw conflict_error("record id '" + record.id + "' already registered");
    Key key{record.timestamp, record.id};
    id_index_.emplace(record.id, key);
    by_key_.emplace(std::move(key), std::move(record));
}

bool HypothesisLedger::contains(const std::string& id) const {
    return id_index_.count(id) > 0;
}

const AttemptRecord& HypothesisLedger::get(const std::string& id) const {
    auto it = id_index_.find(id);
    if (it == id_index_.end()) throw not_found_error("no record with id '" + id + "'");
    return by_key_.at(it->second);
}

std::vector<AttemptRecord> HypothesisLedger::records() const {
    std::vector<AttemptRecord> out;
    out.reserve(by_key_.size());
    for (const auto& [key, rec] : by_key_) out.push_back(rec);
    return out;
}

UncertaintyBreakdown HypothesisLedger::uncertainty_detail(const std::string& id,
                                                          const KnowledgeScope& scope) const {
    const AttemptRecord& target = get(id);
    if (!scope.is_all()) {
        for (const auto& name : scope.names()) {
            bool known = false;
            for (const auto& [key, rec] : by_key_)
                if (rec.agent == name) { known = true; break; }
            if (!known) throw not_found_error("no records from agent '" + name + "'");
        }
    }

    long long attempts = 0;
    bool counted_target = false;
    bool heterogeneous = false;
    for (const auto& [key, rec] : by_key_) {
        if (rec.timestamp > target.timestamp) break;  // map is (ts, id) ordered
        if (!scope.includes(rec.agent)) continue;
        ++attempts;
        if (rec.id == target.id) counted_target = true;
        if (rec.predictions != target.predictions || rec.base_prob != target.base_prob)
            heterogeneous = true;
    }
    if (!counted_target) ++attempts;  // the evaluated result is always an attempt

    UncertaintyBreakdown out;
    out.attempts = attempts;
    out.heterogeneous = heterogeneous;
    const BinomialQuery q{target.successes, target.predictions, target.base_prob};
    out.single = binom_sf(q);
    out.value = best_of_m(q, attempts);
    return out;
}

double HypothesisLedger::uncertainty(const std::string& id, const KnowledgeScope& scope) const {
    return uncertainty_detail(id, scope).value;
}

double HypothesisLedger::reviewer_combine(std::span<const std::string> ids, double cutoff) const {
    if (ids.empty()) throw domain_error("need at least one result id");
    std::vector<double> probs;
    probs.reserve(ids.size());
    const auto scope = KnowledgeScope::all();
    for (const auto& id : ids) probs.push_back(uncertainty(id, scope));
    return combine_results(probs, cutoff);
}

HypothesisLedger HypothesisLedger::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open ledger file: " + path.string());

    HypothesisLedger ledger;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw parse_error("invalid JSON record", lineno);
        if (!j.is_object())
            throw parse_error("ledger record must be a JSON object", lineno);
        for (const auto& [key, value] : j.items()) {
            bool known = false;
            for (const char* k : kRecordKeys) known = known || key == k;
            if (!known) throw parse_error("unknown key '" + key + "'", lineno);
        }
        for (const char* k : kRecordKeys)
            if (!j.contains(k)) throw parse_error(std::string("missing key '") + k + "'", lineno);

        AttemptRecord rec;
        try {
            rec.id = j.at("id").get<std::string>();
            rec.agent = j.at("agent").get<std::string>();
            rec.timestamp = j.at("ts").get<std::int64_t>();
            rec.predictions = j.at("n").get<long long>();
            rec.successes = j.at("k").get<long long>();
            rec.base_prob = j.at("p0").get<double>();
            rec.note = j.at("note").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("bad field type: ") + e.what(), lineno);
        }
        try {
            ledger.register_attempt(std::move(rec));
        } catch (const std::exception& e) {
            throw parse_error(e.what(), lineno);
        }
    }
    return ledger;
}

void HypothesisLedger::save(const std::filesystem::path& path) const {
    std::ostringstream body;
    for (const auto& [key, rec] : by_key_) {
        nlohmann::json j;
        j["id"] = rec.id;
        j["agent"] = rec.agent;
        j["ts"] = rec.timestamp;
        j["n"] = rec.predictions;
        j["k"] = rec.successes;
        j["p0"] = rec.base_prob;
        j["note"] = rec.note;
        body << j.dump() << '\n';
    }
    write_file_atomic(path, body.str());
}

}  // namespace stratval
