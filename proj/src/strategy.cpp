#include "stratval/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "stratval/binomial.hpp"
#include "stratval/errors.hpp"
#include "stratval/io.hpp"

namespace stratval {

const char* to_string(Direction d) { return d == Direction::Long ? "long" : "short"; }
const char* to_string(Outcome o) { return o == Outcome::Win ? "win" : "loss"; }
const char* to_string(TradingMode m) { return m == TradingMode::Live ? "LIVE" : "VIRTUAL"; }

Direction direction_from_string(const std::string& s) {
    if (s == "long") return Direction::Long;
    if (s == "short") return Direction::Short;
    throw domain_error("direction must be 'long' or 'short', got '" + s + "'");
}

Outcome outcome_from_string(const std::string& s) {
    if (s == "win") return Outcome::Win;
    if (s == "loss") return Outcome::Loss;
    throw domain_error("outcome must be 'win' or 'loss', got '" + s + "'");
}

std::vector<TradeRecord> ingest_trades(std::istream& in, const std::string& source_name) {
    std::string line;
    std::size_t lineno = 0;

    // header row
    bool have_size = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto header = split_csv_row(line);
        if (header.size() == 4 && header[0] == "open" && header[1] == "close" &&
            header[2] == "direction" && header[3] == "outcome") {
            have_size = false;
        } else if (header.size() == 5 && header[0] == "open" && header[1] == "close" &&
                   header[2] == "direction" && header[3] == "outcome" && header[4] == "size") {
            have_size = true;
        } else {
            throw parse_error("bad trades header in " + source_name +
                                  "; expected open,close,direction,outcome[,size]",
                              lineno);
        }
        break;
    }
    if (lineno == 0) throw parse_error("trades input is empty: " + source_name);

    std::vector<TradeRecord> out;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++row;
        const auto cells = split_csv_row(line);
        const std::size_t expected = have_size ? 5 : 4;
        if (cells.size() != expected)
            throw parse_error("row " + std::to_string(row) + ": expected " +
                                  std::to_string(expected) + " fields, got " +
                                  std::to_string(cells.size()),
                              lineno);
        TradeRecord rec;
        if (!parse_ll(cells[0], rec.open_index))
            throw parse_error("row " + std::to_string(row) + ": bad open index '" + cells[0] + "'",
                              lineno);
        if (!parse_ll(cells[1], rec.close_index))
            throw parse_error("row " + std::to_string(row) + ": bad close index '" + cells[1] + "'",
                              lineno);
        try {
            rec.direction = direction_from_string(cells[2]);
            rec.outcome = outcome_from_string(cells[3]);
        } catch (const domain_error& e) {
            throw parse_error("row " + std::to_string(row) + ": " + e.what(), lineno);
        }
        if (have_size) {
            double size = 0.0;
            if (!parse_double(cells[4], size))
                throw parse_error("row " + std::to_string(row) + ": bad size '" + cells[4] + "'",
                                  lineno);
            rec.size = size;
        }
        if (rec.open_index >= rec.close_index)
            throw domain_error("row " + std::to_string(row) +
                               ": trade must close after it opens (open " +
                               std::to_string(rec.open_index) + ", close " +
                               std::to_string(rec.close_index) + ")");
        out.push_back(rec);
    }
    return out;
}

std::vector<TradeRecord> load_trades(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open trades file: " + path.string());
    return ingest_trades(in, path.string());
}

PriceSeries::PriceSeries(std::vector<std::string> labels, std::vector<double> closes)
    : labels_(std::move(labels)), closes_(std::move(closes)) {
    if (closes_.size() != labels_.size())
        throw domain_error("label and close sequences must have equal length");
    if (closes_.size() < 2) throw domain_error("price series needs at least 2 points");
    for (double c : closes_)
        if (!(c > 0.0)) throw domain_error("close prices must be positive");
    // numeric labels are ordered as numbers, anything else as strings
    bool numeric = true;
    std::vector<long long> as_num(labels_.size());
    for (std::size_t i = 0; i < labels_.size() && numeric; ++i)
        numeric = parse_ll(labels_[i], as_num[i]);
    for (std::size_t i = 1; i < labels_.size(); ++i) {
        const bool increasing = numeric ? as_num[i] > as_num[i - 1] : labels_[i] > labels_[i - 1];
        if (!increasing) throw domain_error("time labels must be strictly increasing");
    }
}

PriceSeries PriceSeries::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open prices file: " + path.string());

    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::vector<std::string> labels;
    std::vector<double> closes;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv_row(line);
        if (!have_header) {
            if (cells.size() != 2 || cells[0] != "time" || cells[1] != "close")
                throw parse_error("bad prices header; expected time,close", lineno);
            have_header = true;
            continue;
        }
        if (cells.size() != 2)
            throw parse_error("expected 2 fields, got " + std::to_string(cells.size()), lineno);
        double close = 0.0;
        if (!parse_double(cells[1], close))
            throw parse_error("bad close price '" + cells[1] + "'", lineno);
        labels.push_back(cells[0]);
        closes.push_back(close);
    }
    if (!have_header) throw parse_error("prices file is empty: " + path.string());
    try {
        return PriceSeries(std::move(labels), std::move(closes));
    } catch (const domain_error& e) {
        throw parse_error(std::string(e.what()) + " in " + path.string());
    }
}

double baseline_win_prob(const PriceSeries& prices, Direction direction) {
    const auto& c = prices.closes();
    long long favorable = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        const bool up = c[i] > c[i - 1];
        const bool down = c[i] < c[i - 1];  // flat favors neither direction
        favorable += (direction == Direction::Long ? up : down) ? 1 : 0;
    }
    return static_cast<double>(favorable) / static_cast<double>(c.size() - 1);
}

double track_record_uncertainty(const std::vector<TradeRecord>& trades, double base_prob,
                                long long attempts, TailComparison comparison) {
    if (trades.empty()) throw domain_error("need at least one trade");
    long long wins = 0;
    for (const auto& t : trades) wins += t.outcome == Outcome::Win ? 1 : 0;
    const auto n = static_cast<long long>(trades.size());
    double single;
    if (comparison == TailComparison::Greater) {
        // strictly more wins than the record; impossible when the record is perfect
        single = wins >= n ? 0.0 : binom_sf({wins + 1, n, base_prob});
    } else {
        single = binom_sf({wins, n, base_prob});
    }
    return best_of_m(single, attempts);
}

ControlState make_control_state(long long window_capacity, double threshold, double base_prob) {
    if (window_capacity < 1) throw domain_error("window capacity must be >= 1");
    if (!(threshold > 0.0 && threshold < 1.0)) throw domain_error("threshold must lie in (0, 1)");
    if (!(base_prob >= 0.0 && base_prob <= 1.0))
        throw domain_error("base probability must lie in [0, 1]");
    ControlState s;
    s.window_capacity = window_capacity;
    s.threshold = threshold;
    s.base_prob = base_prob;
    s.mode = TradingMode::Live;
    s.rolling_prob = 1.0;  // empty window: a blind strategy ties it trivially
    return s;
}

ControlState control_step(const ControlState& state, Outcome outcome) {
    ControlState next = state;
    next.recent.push_back(outcome);
    while (static_cast<long long>(next.recent.size()) > next.window_capacity)
        next.recent.pop_front();

    long long wins = 0;
    for (Outcome o : next.recent) wins += o == Outcome::Win ? 1 : 0;
    const BinomialQuery q{wins, static_cast<long long>(next.recent.size()), next.base_prob};
    next.rolling_prob = binom_sf(q);
    next.mode = next.rolling_prob > next.threshold ? TradingMode::Virtual : TradingMode::Live;
    return next;
}

double st_petersburg_ev(long long tosses) {
    if (tosses < 0) throw domain_error("toss count must be >= 0");
    return static_cast<double>(tosses) / 2.0;
}

double st_petersburg_ab(long long tosses) {
    if (tosses < 1) throw domain_error("toss count must be >= 1");
    return static_cast<double>(tosses - 1) / 4.0 + 1.0;
}

double st_petersburg_beat_prob(long long tosses) {
    if (tosses < 1) throw domain_error("toss count must be >= 1");
    const long long L = tosses;
    // (2k - L) * AB > L/2 with AB = (L+3)/4 reduces to k > (L^2 + 5L) / (2L + 6);
    // integer floor + 1 gives the least winning k for strict "better"
    const long long k_min = (L * L + 5 * L) / (2 * L + 6) + 1;
    if (k_min > L) return 0.0;
    return binom_sf(BinomialQuery{k_min, L, 0.5});
}

StPetersburgReport st_petersburg_report(long long tosses) {
    StPetersburgReport r;
    r.tosses = tosses;
    r.expected_value = st_petersburg_ev(tosses);
    r.average_bet = st_petersburg_ab(tosses);
    r.beat_prob = st_petersburg_beat_prob(tosses);
    r.boundary = r.beat_prob >= 0.5;  // only L = 1 reaches the coin-flip ceiling
    return r;
}

std::vector<double> random_equity_line(const PriceSeries& prices, std::uint64_t master_seed) {
    const auto& c = prices.closes();
    std::vector<double> equity(c.size(), 0.0);
    SplitMix64 gen(master_seed);
    bool in_position = gen.next_coin();  // day 0: flip to open
    for (std::size_t i = 1; i < c.size(); ++i) {
        equity[i] = equity[i - 1] + (in_position ? c[i] - c[i - 1] : 0.0);
        // today's flip: close an open position / open when flat
        in_position = in_position ? !gen.next_coin() : gen.next_coin();
    }
    return equity;
}

McEstimate equity_uncertainty(double final_equity, const PriceSeries& prices,
                              std::uint64_t replicates, std::uint64_t master_seed,
                              double confidence, int threads) {
    if (replicates < 100)
        throw domain_error("need at least 100 replicates for an interval estimate");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw domain_error("confidence must lie in (0, 1)");
    if (threads < 1) throw domain_error("thread count must be >= 1");

    const auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            const auto line = random_equity_line(prices, derive_replicate_seed(master_seed, i));
            hits += line.back() >= final_equity ? 1 : 0;
        }
        return hits;
    };

    std::uint64_t hits = 0;
    const auto workers = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), replicates);
    if (workers <= 1) {
        hits = run_range(0, replicates);
    } else {
        std::vector<std::uint64_t> partial(workers, 0);
        std::vector<std::thread> pool;
        const std::uint64_t chunk = replicates / workers;
        const std::uint64_t extra = replicates % workers;
        std::uint64_t begin = 0;
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
            pool.emplace_back([&, w, begin, end] { partial[w] = run_range(begin, end); });
            begin = end;
        }
        for (auto& t : pool) t.join();
        for (std::uint64_t h : partial) hits += h;
    }

    const auto [lo, hi] = wilson_interval(static_cast<long long>(hits),
                                          static_cast<long long>(replicates), confidence);
    McEstimate est;
    est.point = static_cast<double>(hits) / static_cast<double>(replicates);
    est.lower = lo;
    est.upper = hi;
    est.hits = hits;
    est.replicates = replicates;
    est.master_seed = master_seed;
    est.confidence = confidence;
    return est;
}

double oracle_final_equity(const PriceSeries& prices) {
    const auto& c = prices.closes();
    double total = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) total += std::max(0.0, c[i] - c[i - 1]);
    return total;
}

}  // namespace stratval
