#pragma once

#include <cstdint>

namespace stratval {

// splitmix64 increment; every seed stream in this project is the splitmix64
// output sequence of its master seed, so runs are reproducible from one u64.
inline constexpr std::uint64_t kSeedStreamGamma = 0x9E3779B97F4A7C15ULL;

// splitmix64: tiny, fast, passes BigCrush, and trivially counter-based.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += kSeedStreamGamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform double in [0, 1), 53 random bits
    double next_unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // fair coin from the top bit
    bool next_coin() noexcept { return (next() >> 63) != 0; }

private:
    std::uint64_t state_;
};

// Seed of replicate `index` under `master`: the (index+1)-th output of the
// splitmix64 stream seeded with `master`.  Pure function of (master, index),
// so replicate streams are identical no matter how work is split over threads.
std::uint64_t derive_replicate_seed(std::uint64_t master, std::uint64_t index) noexcept;

enum class TailComparison {
    GreaterEqual,  // score >= threshold counts as a hit
    Greater,       // score >  threshold
};

// One synthetic attempt: `trial_count` Bernoulli draws at `success_prob`,
// a replicate is a hit when its success count clears `success_threshold`.
struct ReplicateModel {
    long long trial_count = 0;
    double success_prob = 0.5;
    long long success_threshold = 0;
    TailComparison comparison = TailComparison::GreaterEqual;
};

struct McEstimate {
    double point = 0.0;   // hit fraction
    double lower = 0.0;   // Wilson bound at `confidence`
    double upper = 1.0;
    std::uint64_t hits = 0;
    std::uint64_t replicates = 0;
    std::uint64_t master_seed = 0;
    double confidence = 0.95;
};

// Number of hit replicates.  Identical for every `threads` value because each
// replicate draws only from its own derived seed.
std::uint64_t run_replicates(const ReplicateModel& model, std::uint64_t replicates,
                             std::uint64_t master_seed, int threads = 1);

// Hit fraction plus a Wilson interval; the Monte Carlo twin of binom_sf.
McEstimate estimate_equal_or_better(const ReplicateModel& model, std::uint64_t replicates,
                                    std::uint64_t master_seed, double confidence = 0.95,
                                    int threads = 1);

}  // namespace stratval
