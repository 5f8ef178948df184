#include "stratval/monte_carlo.hpp"

#include <string>
#include <thread>
#include <vector>

#include "stratval/binomial.hpp"
#include "stratval/errors.hpp"

namespace stratval {

namespace {

void check_model(const ReplicateModel& m) {
    if (m.trial_count < 0) throw domain_error("trial count must be >= 0");
    if (!(m.success_prob >= 0.0 && m.success_prob <= 1.0))
        throw domain_error("success probability must lie in [0, 1]");
    if (m.success_threshold < 0 || m.success_threshold > m.trial_count)
        throw domain_error("success threshold must lie in [0, trial count]");
}

std::uint64_t run_range(const ReplicateModel& m, std::uint64_t master,
                        std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
        SplitMix64 gen(derive_replicate_seed(master, i));
        long long successes = 0;
        for (long long t = 0; t < m.trial_count; ++t)
            successes += gen.next_unit() < m.success_prob ? 1 : 0;
        const bool hit = m.comparison == TailComparison::GreaterEqual
                             ? successes >= m.success_threshold
                             : successes > m.success_threshold;
        hits += hit ? 1 : 0;
    }
    return hits;
}

}  // namespace

std::uint64_t derive_replicate_seed(std::uint64_t master, std::uint64_t index) noexcept {
    std::uint64_t z = master + (index + 1) * kSeedStreamGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t run_replicates(const ReplicateModel& model, std::uint64_t replicates,
                             std::uint64_t master_seed, int threads) {
    check_model(model);
    if (replicates < 1) throw domain_error("replicate count must be >= 1");
    if (threads < 1) throw domain_error("thread count must be >= 1");

    const std::uint64_t workers =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), replicates);
    if (workers == 1) return run_range(model, master_seed, 0, replicates);

    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = replicates / workers;
    const std::uint64_t extra = replicates % workers;
    std::uint64_t begin = 0;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
        pool.emplace_back([&, w, begin, end] { partial[w] = run_range(model, master_seed, begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();

    std::uint64_t hits = 0;
    for (std::uint64_t h : partial) hits += h;
    return hits;
}

McEstimate estimate_equal_or_better(const ReplicateModel& model, std::uint64_t replicates,
                                    std::uint64_t master_seed, double confidence,
                                    int threads) {
    if (replicates < 100)
        throw domain_error("need at least 100 replicates for an interval estimate");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw domain_error("confidence must lie in (0, 1)");

    const std::uint64_t hits = run_replicates(model, replicates, master_seed, threads);
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

}  // namespace stratval
