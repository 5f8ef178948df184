#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stratval/monte_carlo.hpp"

namespace stratval {

enum class Direction { Long, Short };
enum class Outcome { Win, Loss };

struct TradeRecord {
    long long open_index = 0;   // position in the underlying series
    long long close_index = 0;  // must be > open_index
    Direction direction = Direction::Long;
    Outcome outcome = Outcome::Win;
    std::optional<double> size;  // parsed and reported, never weighted
};

// CSV with header `open,close,direction,outcome` (optional trailing `size`).
std::vector<TradeRecord> ingest_trades(std::istream& in, const std::string& source_name);
std::vector<TradeRecord> load_trades(const std::filesystem::path& path);

// Ordered (time label, close price) pairs.
class PriceSeries {
public:
    PriceSeries(std::vector<std::string> labels, std::vector<double> closes);

    // CSV with header `time,close`.
    static PriceSeries load(const std::filesystem::path& path);

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<double>& closes() const noexcept { return closes_; }
    std::size_t size() const noexcept { return closes_.size(); }

private:
    std::vector<std::string> labels_;
    std::vector<double> closes_;
};

// Fraction of consecutive intervals that move the right way for the
// direction; flat intervals count against either direction.
double baseline_win_prob(const PriceSeries& prices, Direction direction);

// The strategy's uncertainty figure: probability that the best of
// `attempts` blind strategies does as well as this win count.
//
// `comparison` picks the tail convention.  GreaterEqual (default) counts a
// blind strategy that merely ties the record; Greater demands it win more
// trades outright, so a perfect record gives 0 instead of pmf mass.  Both
// conventions are in circulation for this figure; callers state their pick.
double track_record_uncertainty(const std::vector<TradeRecord>& trades, double base_prob,
                                long long attempts = 1,
                                TailComparison comparison = TailComparison::GreaterEqual);

enum class TradingMode { Live, Virtual };

// Rolling gate over the most recent outcomes: when the equal-or-better
// probability of the current window drifts above the threshold, trading
// drops to virtual; it resumes once the window earns its keep again.
struct ControlState {
    long long window_capacity = 1;
    double threshold = 0.5;      // in (0, 1)
    double base_prob = 0.5;
    std::deque<Outcome> recent;  // newest at the back, size <= window_capacity
    TradingMode mode = TradingMode::Live;
    double rolling_prob = 1.0;   // equal-or-better probability of `recent`
};

ControlState make_control_state(long long window_capacity, double threshold, double base_prob);

// Appends the outcome (evicting beyond capacity), recomputes the window
// probability, and re-decides the mode.  Outcomes are recorded in both
// modes; only the mode label changes.
ControlState control_step(const ControlState& state, Outcome outcome);

struct StPetersburgReport {
    long long tosses = 0;     // L
    double expected_value = 0.0;  // L/2
    double average_bet = 0.0;     // (L-1)/4 + 1
    double beat_prob = 0.0;
    bool boundary = false;    // L == 1, where beat_prob reaches 0.5
};

double st_petersburg_ev(long long tosses);        // L >= 0
double st_petersburg_ab(long long tosses);        // L >= 1
// P[(2k - L) * AB > EV] for k ~ Binomial(L, 0.5); strictly better, hence
// strict inequality.
double st_petersburg_beat_prob(long long tosses);
StPetersburgReport st_petersburg_report(long long tosses);

// Coin-flip protocol over the price series: each day, flip to open a one-unit
// long position if flat, or to close it if open; equity accrues the close-to-
// close moves while the position is held.  equity[0] = 0.
std::vector<double> random_equity_line(const PriceSeries& prices, std::uint64_t master_seed);

// Fraction of random equity lines whose final value reaches `final_equity`
// (equal-or-better), with a Wilson interval.
McEstimate equity_uncertainty(double final_equity, const PriceSeries& prices,
                              std::uint64_t replicates, std::uint64_t master_seed,
                              double confidence = 0.95, int threads = 1);

// Final equity of the clairvoyant strategy that is long during exactly the
// rising days — the upper bound any strategy on this series can reach.
double oracle_final_equity(const PriceSeries& prices);

const char* to_string(Direction d);
const char* to_string(Outcome o);
const char* to_string(TradingMode m);
Direction direction_from_string(const std::string& s);  // domain_error on junk
Outcome outcome_from_string(const std::string& s);

}  // namespace stratval
