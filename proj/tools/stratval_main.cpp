// stratval: command-line front end over the validation library.
//
// Exit codes: 0 success, 1 usage error, 2 data error (unreadable or invalid
// input, unknown ids, budget overruns).  Every report carries an FNV-1a
// digest of the exact input bytes and parameters the run saw, so results can
// be tied back to their inputs.  All commands are deterministic given their
// inputs and --seed.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "stratval/binomial.hpp"
#include "stratval/errors.hpp"
#include "stratval/io.hpp"
#include "stratval/ledger.hpp"
#include "stratval/monte_carlo.hpp"
#include "stratval/occam.hpp"
#include "stratval/sequence.hpp"
#include "stratval/strategy.hpp"

namespace sv = stratval;
using nlohmann::json;

namespace {

// 12 significant digits in text output; JSON carries raw doubles (shortest
// round-trip form, lossless).
std::string fmt_prob(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// accumulates every input byte and parameter; the digest names the run
class Digester {
public:
    void add(const std::string& tag, const std::string& bytes) {
        buf_ += tag;
        buf_ += '\n';
        buf_ += bytes;
        buf_ += '\n';
    }
    void add_file(const std::string& tag, const std::filesystem::path& path) {
        add(tag, sv::read_file(path));
    }
    std::string hex() const { return sv::fnv1a64_hex(buf_); }

private:
    std::string buf_;
};

struct Report {
    std::string command;
    std::string digest;
    json result = json::object();
    std::vector<std::string> warnings;
    std::vector<std::string> lines;  // human-readable body

    std::string render(bool as_json) const {
        if (as_json) {
            json j;
            j["command"] = command;
            j["digest"] = digest;
            j["result"] = result;
            j["warnings"] = warnings;
            return j.dump(2) + "\n";
        }
        std::string out;
        for (const auto& l : lines) {
            out += l;
            out += '\n';
        }
        for (const auto& w : warnings) {
            out += "note: ";
            out += w;
            out += '\n';
        }
        return out;
    }
};

void emit(const Report& r, bool as_json, const std::string& out_path) {
    const std::string payload = r.render(as_json);
    std::cout << payload;
    if (!out_path.empty()) sv::write_file_atomic(out_path, payload);
}

int usage_error(const std::string& msg) {
    std::cerr << "stratval: " << msg << "\nRun with --help for usage.\n";
    return 1;
}

// ---------------------------------------------------------------- eval

struct EvalOpts {
    std::string trades_path;
    double baseline = -1.0;  // < 0 means not given
    std::string prices_path;
    std::string direction;
    long long attempts = 1;
    double risk = 0.05;
    bool as_json = false;
    std::string out_path;
};

int run_eval(const EvalOpts& o) {
    const bool have_baseline = o.baseline >= 0.0;
    const bool have_prices = !o.prices_path.empty();
    if (have_baseline == have_prices)
        return usage_error("eval: give either --baseline or --prices with --direction");
    if (have_prices && o.direction.empty())
        return usage_error("eval: --prices needs --direction long|short");

    Digester d;
    d.add("command", "eval");
    d.add_file("trades", o.trades_path);
    const auto trades = sv::load_trades(o.trades_path);

    double p0 = 0.0;
    std::string p0_source;
    if (have_baseline) {
        p0 = o.baseline;
        p0_source = "given";
        d.add("baseline", fmt_prob(p0));
    } else {
        d.add_file("prices", o.prices_path);
        d.add("direction", o.direction);
        const auto prices = sv::PriceSeries::load(o.prices_path);
        p0 = sv::baseline_win_prob(prices, sv::direction_from_string(o.direction));
        p0_source = "computed";
    }
    d.add("attempts", std::to_string(o.attempts));
    d.add("risk", fmt_prob(o.risk));

    long long wins = 0;
    for (const auto& t : trades) wins += t.outcome == sv::Outcome::Win ? 1 : 0;

    // Strictly-better tail: the chance a blind strategy, given the same number
    // of trades, wins MORE of them than this record did (best of --attempts).
    const double u = sv::track_record_uncertainty(trades, p0, o.attempts,
                                                  sv::TailComparison::Greater);
    const bool significant = u < o.risk;

    Report r;
    r.command = "eval";
    r.digest = d.hex();
    r.result = {{"trades", static_cast<long long>(trades.size())},
                {"wins", wins},
                {"p0", p0},
                {"p0_source", p0_source},
                {"attempts", o.attempts},
                {"uncertainty", u},
                {"risk", o.risk},
                {"verdict", significant ? "significant" : "not significant"}};
    r.lines = {"trades: " + std::to_string(trades.size()),
               "wins: " + std::to_string(wins),
               "p0: " + fmt_prob(p0) + " (" + p0_source + ")",
               "attempts: " + std::to_string(o.attempts),
               "uncertainty: " + fmt_prob(u) + " (" + fmt_prob(u * 100.0) + "%)",
               "verdict: " + std::string(significant ? "significant" : "not significant") +
                   " at risk " + fmt_prob(o.risk)};
    emit(r, o.as_json, o.out_path);
    return 0;
}

// ---------------------------------------------------------------- monitor

struct MonitorOpts {
    std::string trades_path;
    long long window = 10;
    double threshold = 0.1;
    double baseline = 0.5;
    bool as_json = false;
    std::string out_path;
};

int run_monitor(const MonitorOpts& o) {
    Digester d;
    d.add("command", "monitor");
    d.add_file("trades", o.trades_path);
    d.add("window", std::to_string(o.window));
    d.add("threshold", fmt_prob(o.threshold));
    d.add("baseline", fmt_prob(o.baseline));
    const auto trades = sv::load_trades(o.trades_path);

    auto state = sv::make_control_state(o.window, o.threshold, o.baseline);
    Report r;
    r.command = "monitor";
    r.digest = d.hex();
    json steps = json::array();
    long long index = 1;
    for (const auto& t : trades) {
        state = sv::control_step(state, t.outcome);
        steps.push_back({{"index", index},
                         {"prob", state.rolling_prob},
                         {"mode", sv::to_string(state.mode)}});
        r.lines.push_back(std::to_string(index) + " " + fmt_prob(state.rolling_prob) + " " +
                          sv::to_string(state.mode));
        ++index;
    }
    r.lines.push_back("final: " + std::string(sv::to_string(state.mode)));
    r.result = {{"window", o.window},
                {"threshold", o.threshold},
                {"p0", o.baseline},
                {"trades", static_cast<long long>(trades.size())},
                {"steps", steps},
                {"final_mode", sv::to_string(state.mode)}};
    emit(r, o.as_json, o.out_path);
    return 0;
}

// ---------------------------------------------------------------- stpetersburg

struct StpOpts {
    long long max_tosses = 200;
    long long step = 10;
    bool as_json = false;
    std::string out_path;
};

int run_stpetersburg(const StpOpts& o) {
    std::string csv = "L,ev,ab,beat_prob\n";
    json rows = json::array();
    for (long long tosses = 10; tosses <= o.max_tosses; tosses += o.step) {
        const auto rep = sv::st_petersburg_report(tosses);
        csv += std::to_string(tosses) + "," + fmt_prob(rep.expected_value) + "," +
               fmt_prob(rep.average_bet) + "," + fmt_prob(rep.beat_prob) + "\n";
        rows.push_back({{"L", tosses},
                        {"ev", rep.expected_value},
                        {"ab", rep.average_bet},
                        {"beat_prob", rep.beat_prob}});
    }
    if (o.as_json) {
        Digester d;
        d.add("command", "stpetersburg");
        d.add("max", std::to_string(o.max_tosses));
        d.add("step", std::to_string(o.step));
        Report r;
        r.command = "stpetersburg";
        r.digest = d.hex();
        r.result = {{"rows", rows}};
        emit(r, true, o.out_path);
    } else {
        std::cout << csv;
        if (!o.out_path.empty()) sv::write_file_atomic(o.out_path, csv);
    }
    return 0;
}

// ---------------------------------------------------------------- equity-sim

struct EquityOpts {
    std::string prices_path;
    std::uint64_t seed = 0;
    std::uint64_t replicates = 10000;
    bool as_json = false;
    std::string out_path;
};

int run_equity_sim(const EquityOpts& o) {
    Digester d;
    d.add("command", "equity-sim");
    d.add_file("prices", o.prices_path);
    d.add("seed", std::to_string(o.seed));
    d.add("replicates", std::to_string(o.replicates));

    const auto prices = sv::PriceSeries::load(o.prices_path);
    const auto equity = sv::random_equity_line(prices, o.seed);
    std::string csv = "day,equity\n";
    for (std::size_t i = 0; i < equity.size(); ++i)
        csv += prices.labels()[i] + "," + fmt_prob(equity[i]) + "\n";

    const auto est = sv::equity_uncertainty(equity.back(), prices, o.replicates, o.seed,
                                            0.95, 4);
    Report r;
    r.command = "equity-sim";
    r.digest = d.hex();
    r.result = {{"days", static_cast<long long>(prices.size())},
                {"seed", o.seed},
                {"final_equity", equity.back()},
                {"uncertainty", est.point},
                {"wilson_lower", est.lower},
                {"wilson_upper", est.upper},
                {"confidence", est.confidence},
                {"hits", est.hits},
                {"replicates", est.replicates}};
    if (o.as_json) {
        json rows = json::array();
        for (std::size_t i = 0; i < equity.size(); ++i)
            rows.push_back({{"day", prices.labels()[i]}, {"equity", equity[i]}});
        r.result["equity"] = rows;
    }
    r.lines = {"days: " + std::to_string(prices.size()),
               "seed: " + std::to_string(o.seed),
               "final equity: " + fmt_prob(equity.back()),
               "uncertainty: " + fmt_prob(est.point) + " (" + fmt_prob(est.point * 100.0) +
                   "%), wilson [" + fmt_prob(est.lower) + ", " + fmt_prob(est.upper) +
                   "] at " + fmt_prob(est.confidence),
               "hits: " + std::to_string(est.hits) + " of " + std::to_string(est.replicates)};

    const std::string payload = r.render(o.as_json);
    std::cout << payload;
    if (!o.out_path.empty())
        sv::write_file_atomic(o.out_path, csv);
    else if (!o.as_json)
        std::cout << csv;
    return 0;
}

// ---------------------------------------------------------------- ledger

struct LedgerRegisterOpts {
    std::string ledger_path;
    std::string id;
    std::string agent;
    std::int64_t timestamp = 0;
    long long predictions = 0;
    long long successes = 0;
    double base_prob = 0.5;
    std::vector<std::string> note_words;
    bool as_json = false;
    std::string out_path;
};

int run_ledger_register(const LedgerRegisterOpts& o) {
    Digester d;
    d.add("command", "ledger register");
    const bool existed = std::filesystem::exists(o.ledger_path);
    d.add("ledger", existed ? sv::read_file(o.ledger_path) : std::string());
    d.add("record", o.id + " " + o.agent + " " + std::to_string(o.timestamp) + " " +
                        std::to_string(o.predictions) + " " + std::to_string(o.successes) +
                        " " + fmt_prob(o.base_prob));

    sv::HypothesisLedger ledger;
    if (existed) ledger = sv::HypothesisLedger::load(o.ledger_path);
    ledger.register_attempt({o.id, o.agent, o.timestamp, o.predictions, o.successes,
                             o.base_prob, join(o.note_words, " ")});
    ledger.save(o.ledger_path);

    Report r;
    r.command = "ledger register";
    r.digest = d.hex();
    r.result = {{"id", o.id},
                {"agent", o.agent},
                {"ts", o.timestamp},
                {"records", static_cast<long long>(ledger.size())},
                {"ledger", o.ledger_path}};
    r.lines = {"registered " + o.id + ": " + std::to_string(o.successes) + " of " +
                   std::to_string(o.predictions) + " at p0 " + fmt_prob(o.base_prob),
               "ledger " + o.ledger_path + " now holds " + std::to_string(ledger.size()) +
                   " attempts"};
    emit(r, o.as_json, o.out_path);
    return 0;
}

struct LedgerUncertaintyOpts {
    std::string ledger_path;
    std::string id;
    bool all = false;
    std::vector<std::string> agents;
    bool as_json = false;
    std::string out_path;
};

int run_ledger_uncertainty(const LedgerUncertaintyOpts& o) {
    if (o.all == !o.agents.empty())
        return usage_error("ledger uncertainty: give exactly one of --all or --agents");
    Digester d;
    d.add("command", "ledger uncertainty");
    d.add_file("ledger", o.ledger_path);
    d.add("id", o.id);
    d.add("scope", o.all ? "all" : join(o.agents, ","));

    const auto ledger = sv::HypothesisLedger::load(o.ledger_path);
    const auto scope =
        o.all ? sv::KnowledgeScope::all()
              : sv::KnowledgeScope::agents({o.agents.begin(), o.agents.end()});
    const auto detail = ledger.uncertainty_detail(o.id, scope);
    const auto& record = ledger.get(o.id);

    Report r;
    r.command = "ledger uncertainty";
    r.digest = d.hex();
    r.result = {{"id", o.id},
                {"value", detail.value},
                {"single", detail.single},
                {"attempts", detail.attempts},
                {"heterogeneous", detail.heterogeneous}};
    r.result["scope"] = o.all ? json("all") : json(o.agents);
    r.lines = {"result " + o.id + ": " + std::to_string(record.successes) + " of " +
                   std::to_string(record.predictions) + " at p0 " + fmt_prob(record.base_prob),
               "attempts counted: " + std::to_string(detail.attempts),
               "single-attempt probability: " + fmt_prob(detail.single),
               "uncertainty: " + fmt_prob(detail.value) + " (" +
                   fmt_prob(detail.value * 100.0) + "%)"};
    if (record.predictions == 100 && record.successes == 65 && record.base_prob == 0.5 &&
        detail.attempts == 10)
        r.warnings.push_back(
            "a commonly cited uncertainty for this scenario is 16%, which is inconsistent "
            "with the ten-attempt correction of the single-attempt 0.18%: "
            "1 - (1 - 0.0018)^10 = 1.75%; 16.5% corresponds to roughly 100 attempts, not 10");
    if (detail.heterogeneous)
        r.warnings.push_back(
            "counted attempts differ in size or base probability; the correction treats "
            "them as exchangeable with the target's shape");
    emit(r, o.as_json, o.out_path);
    return 0;
}

struct LedgerCombineOpts {
    std::string ledger_path;
    double cutoff = 0.05;
    bool as_json = false;
    std::string out_path;
};

int run_ledger_combine(const LedgerCombineOpts& o) {
    Digester d;
    d.add("command", "ledger combine");
    d.add_file("ledger", o.ledger_path);
    d.add("cutoff", fmt_prob(o.cutoff));

    const auto ledger = sv::HypothesisLedger::load(o.ledger_path);
    std::vector<std::string> ids;
    for (const auto& rec : ledger.records()) ids.push_back(rec.id);
    const double value = ledger.reviewer_combine(ids, o.cutoff);

    Report r;
    r.command = "ledger combine";
    r.digest = d.hex();
    r.result = {{"value", value},
                {"results", static_cast<long long>(ids.size())},
                {"cutoff", o.cutoff}};
    r.lines = {"results combined: " + std::to_string(ids.size()),
               "combined uncertainty: " + fmt_prob(value) + " (" + fmt_prob(value * 100.0) +
                   "%)"};
    emit(r, o.as_json, o.out_path);
    return 0;
}

// ---------------------------------------------------------------- sequence

struct SequenceOpts {
    std::string trace_path;
    std::string events_path;
    bool as_json = false;
    std::string out_path;
};

int run_sequence(const SequenceOpts& o) {
    Digester d;
    d.add("command", "sequence");
    d.add_file("trace", o.trace_path);
    d.add_file("events", o.events_path);

    const auto trace = sv::SystemTrace::load(o.trace_path);
    const auto events = sv::load_events(o.events_path);
    const auto analysis = sv::analyze(trace, events);

    Report r;
    r.command = "sequence";
    r.digest = d.hex();
    json ev = json::array();
    std::string cp;
    for (auto t : analysis.change_points) {
        if (!cp.empty()) cp += ' ';
        cp += std::to_string(t);
    }
    r.lines.push_back("change points: " + (cp.empty() ? "none" : cp));
    for (const auto& a : analysis.events) {
        ev.push_back({{"first", a.event.first},
                      {"last", a.event.last},
                      {"predicted", a.event.predicted},
                      {"probability", a.probability},
                      {"dependent", a.dependent_on_predecessors},
                      {"overlaps_predecessor", a.overlaps_predecessor},
                      {"contribution", a.contribution}});
        r.lines.push_back(
            "event [" + std::to_string(a.event.first) + ", " + std::to_string(a.event.last) +
            "] -> " + std::to_string(a.event.predicted) + ": p = " + fmt_prob(a.probability) +
            ", " + (a.dependent_on_predecessors ? "dependent" : "independent") +
            ", contribution " + fmt_prob(a.contribution));
        // the widely circulated figure for this window divides by the wrong count
        if (a.event.first == 9 && a.event.last == 20 && a.probability == 5.0 / 12.0)
            r.warnings.push_back(
                "a commonly cited probability for this window is 5/7 (about 0.714); "
                "counting the 5 favorable positions over the full 12-position window "
                "[9, 20] gives 5/12 (about 0.417)");
    }
    r.lines.push_back("compound probability: " + fmt_prob(analysis.compound_probability));
    r.result = {{"change_points", analysis.change_points},
                {"events", ev},
                {"compound", analysis.compound_probability}};
    emit(r, o.as_json, o.out_path);
    return 0;
}

// ---------------------------------------------------------------- compare

struct CompareOpts {
    std::vector<std::string> first_files;
    std::vector<std::string> second_files;
    bool as_json = false;
    std::string out_path;
};

json history_json(const std::vector<std::uint64_t>& counts, std::uint64_t last,
                  std::uint64_t union_count, double random_prob) {
    return {{"hypotheses", static_cast<long long>(counts.size())},
            {"counts", counts},
            {"last_count", last},
            {"union_count", union_count},
            {"random_prob", random_prob},
            {"prob_true", 1.0 - random_prob}};
}

int run_compare(const CompareOpts& o) {
    Digester d;
    d.add("command", "compare");

    sv::SequenceSpace space;
    bool have_space = false;
    auto load_history = [&](const std::vector<std::string>& files, const char* tag,
                            sv::HypothesisHistory& out, std::vector<std::uint64_t>& counts) {
        std::int64_t t = 1;
        for (const auto& f : files) {
            d.add_file(tag, f);
            const auto parsed = sv::load_hypothesis_file(f);
            if (!have_space) {
                space = parsed.space;
                have_space = true;
            } else if (parsed.space.symbols != space.symbols ||
                       parsed.space.length != space.length) {
                throw sv::domain_error("hypothesis files disagree on the space: " + f +
                                       " declares C=" + std::to_string(parsed.space.symbols) +
                                       " N=" + std::to_string(parsed.space.length));
            }
            out.push_back(sv::Hypothesis::from_sequences(t, space, parsed.sequences));
            counts.push_back(sv::admitted_count(out.back(), space));
            ++t;
        }
    };

    sv::HypothesisHistory h1, h2;
    std::vector<std::uint64_t> counts1, counts2;
    load_history(o.first_files, "first", h1, counts1);
    load_history(o.second_files, "second", h2, counts2);

    const auto cmp = sv::compare_histories(h1, h2, space);
    const char* preferred = cmp.preferred == sv::Preference::First    ? "first"
                            : cmp.preferred == sv::Preference::Second ? "second"
                                                                      : "tie";

    Report r;
    r.command = "compare";
    r.digest = d.hex();
    r.result = {{"space",
                 {{"symbols", space.symbols},
                  {"length", space.length},
                  {"size", cmp.space_size}}},
                {"first", history_json(counts1, cmp.last_count_1, cmp.union_count_1,
                                       cmp.random_prob_1)},
                {"second", history_json(counts2, cmp.last_count_2, cmp.union_count_2,
                                        cmp.random_prob_2)},
                {"case", cmp.case_number},
                {"preferred", preferred},
                {"summary", cmp.summary}};
    r.lines = {"space: " + std::to_string(space.symbols) + "^" +
                   std::to_string(space.length) + " = " + std::to_string(cmp.space_size),
               "first:  last admits " + std::to_string(cmp.last_count_1) + ", history union " +
                   std::to_string(cmp.union_count_1) + ", random-success probability " +
                   fmt_prob(cmp.random_prob_1),
               "second: last admits " + std::to_string(cmp.last_count_2) + ", history union " +
                   std::to_string(cmp.union_count_2) + ", random-success probability " +
                   fmt_prob(cmp.random_prob_2),
               "case: " + std::to_string(cmp.case_number),
               "preferred: " + std::string(preferred),
               cmp.summary};
    emit(r, o.as_json, o.out_path);
    return 0;
}

void add_common(CLI::App* cmd, bool& as_json, std::string& out_path) {
    cmd->add_flag("--json", as_json, "emit the machine-readable report");
    cmd->add_option("--out", out_path, "also write the primary output to this file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "strategy validation: how likely is an equal-or-better result by pure chance?"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "stratval 0.1.0");

    EvalOpts eval_opts;
    auto* eval_cmd = app.add_subcommand(
        "eval", "score a trade log against a blind baseline");
    eval_cmd->add_option("--trades", eval_opts.trades_path, "trade log CSV")->required();
    eval_cmd->add_option("--baseline", eval_opts.baseline,
                         "blind per-trade win probability p0")
        ->check(CLI::Range(0.0, 1.0));
    eval_cmd->add_option("--prices", eval_opts.prices_path,
                         "price CSV to compute p0 from (with --direction)");
    eval_cmd->add_option("--direction", eval_opts.direction, "long or short")
        ->check(CLI::IsMember({"long", "short"}));
    eval_cmd->add_option("--attempts", eval_opts.attempts,
                         "how many strategies were tried before this one")
        ->check(CLI::Range(1ll, 1000000000ll));
    eval_cmd->add_option("--risk", eval_opts.risk, "significance threshold for the verdict")
        ->check(CLI::Range(0.0, 1.0));
    add_common(eval_cmd, eval_opts.as_json, eval_opts.out_path);

    MonitorOpts mon_opts;
    auto* mon_cmd = app.add_subcommand(
        "monitor", "replay the live/virtual gate over a trade log");
    mon_cmd->add_option("--trades", mon_opts.trades_path, "trade log CSV")->required();
    mon_cmd->add_option("--window", mon_opts.window, "rolling window size")
        ->check(CLI::Range(1ll, 1000000000ll));
    mon_cmd->add_option("--threshold", mon_opts.threshold,
                        "probability above which trading goes virtual")
        ->check(CLI::Range(0.0, 1.0));
    mon_cmd->add_option("--baseline", mon_opts.baseline, "blind per-trade win probability")
        ->check(CLI::Range(0.0, 1.0));
    add_common(mon_cmd, mon_opts.as_json, mon_opts.out_path);

    StpOpts stp_opts;
    auto* stp_cmd = app.add_subcommand(
        "stpetersburg", "doubling-strategy curve: EV, average bet, and beat probability");
    stp_cmd->add_option("max", stp_opts.max_tosses, "largest toss count L (>= 10)")
        ->check(CLI::Range(10ll, 1000000ll));
    stp_cmd->add_option("step", stp_opts.step, "L increment between rows")
        ->check(CLI::Range(1ll, 1000000ll));
    add_common(stp_cmd, stp_opts.as_json, stp_opts.out_path);

    EquityOpts eq_opts;
    auto* eq_cmd = app.add_subcommand(
        "equity-sim", "simulate a coin-flip trader and score its final equity");
    eq_cmd->add_option("--prices", eq_opts.prices_path, "price CSV")->required();
    eq_cmd->add_option("--seed", eq_opts.seed, "master seed for the simulated trader");
    eq_cmd->add_option("--replicates", eq_opts.replicates, "random baselines to draw (>= 100)")
        ->check(CLI::Range(std::uint64_t{100}, std::uint64_t{100000000}));
    add_common(eq_cmd, eq_opts.as_json, eq_opts.out_path);

    auto* led_cmd = app.add_subcommand("ledger", "the book of every validation attempt");
    led_cmd->require_subcommand(1);

    LedgerRegisterOpts reg_opts;
    auto* reg_cmd = led_cmd->add_subcommand("register", "append one attempt");
    reg_cmd->add_option("--ledger", reg_opts.ledger_path, "ledger file (created if missing)")
        ->required();
    reg_cmd->add_option("id", reg_opts.id, "unique attempt id")->required();
    reg_cmd->add_option("agent", reg_opts.agent, "who made the attempt")->required();
    reg_cmd->add_option("ts", reg_opts.timestamp, "integer timestamp")->required();
    reg_cmd->add_option("predictions", reg_opts.predictions, "number of predictions")
        ->required();
    reg_cmd->add_option("successes", reg_opts.successes, "number of hits")->required();
    reg_cmd->add_option("p0", reg_opts.base_prob, "per-prediction blind probability")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    reg_cmd->add_option("note", reg_opts.note_words, "free-form note");
    add_common(reg_cmd, reg_opts.as_json, reg_opts.out_path);

    LedgerUncertaintyOpts unc_opts;
    auto* unc_cmd = led_cmd->add_subcommand(
        "uncertainty", "attempt-corrected probability of one result");
    unc_cmd->add_option("--ledger", unc_opts.ledger_path, "ledger file")->required();
    unc_cmd->add_option("id", unc_opts.id, "result to score")->required();
    unc_cmd->add_flag("--all", unc_opts.all, "count every agent's attempts");
    unc_cmd->add_option("--agents", unc_opts.agents, "count only these agents' attempts")
        ->delimiter(',');
    add_common(unc_cmd, unc_opts.as_json, unc_opts.out_path);

    LedgerCombineOpts comb_opts;
    auto* comb_cmd = led_cmd->add_subcommand(
        "combine", "reviewer's view: all results combined");
    comb_cmd->add_option("--ledger", comb_opts.ledger_path, "ledger file")->required();
    comb_cmd->add_option("--risk", comb_opts.cutoff,
                         "results above this probability only widen the attempt count")
        ->check(CLI::Range(0.0, 1.0));
    add_common(comb_cmd, comb_opts.as_json, comb_opts.out_path);

    SequenceOpts seq_opts;
    auto* seq_cmd = app.add_subcommand(
        "sequence", "change points, per-event odds, and compound probability of a trace");
    seq_cmd->add_option("trace", seq_opts.trace_path, "trace file (F: and T: lines)")
        ->required();
    seq_cmd->add_option("events", seq_opts.events_path,
                        "events file (one `first last value` per line)")
        ->required();
    add_common(seq_cmd, seq_opts.as_json, seq_opts.out_path);

    CompareOpts cmp_opts;
    auto* cmp_cmd = app.add_subcommand(
        "compare", "rank two forecasters by how little room they leave for luck");
    cmp_cmd->add_option("--first", cmp_opts.first_files,
                        "first forecaster's hypothesis files, oldest first")
        ->required();
    cmp_cmd->add_option("--second", cmp_opts.second_files,
                        "second forecaster's hypothesis files, oldest first")
        ->required();
    add_common(cmp_cmd, cmp_opts.as_json, cmp_opts.out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(eval_opts);
        if (mon_cmd->parsed()) return run_monitor(mon_opts);
        if (stp_cmd->parsed()) return run_stpetersburg(stp_opts);
        if (eq_cmd->parsed()) return run_equity_sim(eq_opts);
        if (led_cmd->parsed()) {
            if (reg_cmd->parsed()) return run_ledger_register(reg_opts);
            if (unc_cmd->parsed()) return run_ledger_uncertainty(unc_opts);
            if (comb_cmd->parsed()) return run_ledger_combine(comb_opts);
        }
        if (seq_cmd->parsed()) return run_sequence(seq_opts);
        if (cmp_cmd->parsed()) return run_compare(cmp_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
