#include <bobtail/net/traffic_sim.hpp>

#include <bobtail/common/parallel.hpp>
#include <bobtail/common/rng.hpp>
#include <bobtail/stats/mining_stats.hpp>

#include <algorithm>
#include <stdexcept>

namespace bobtail::net {

TrafficSummary run_traffic_experiment(const TrafficConfig& cfg)
{
    mining::validate(cfg.run);
    if (cfg.k < 1)
        throw std::invalid_argument("k must be at least 1");
    if (!(cfg.p_threshold > 0.0 && cfg.p_threshold < 1.0))
        throw std::invalid_argument("p must lie in (0, 1)");

    // Units: v = 1, r = 1, one interval = one expected block time.
    const auto params = stats::MiningParams::make(cfg.k);
    const auto threshold = stats::broadcast_threshold(cfg.p_threshold, params);
    const double x = threshold.expected_announcements; // threshold in units of v
    const auto k = static_cast<std::size_t>(cfg.k);
    const double budget = static_cast<double>(cfg.k) * stats::target_for_k(cfg.k, 1.0);

    struct Outcome {
        std::uint64_t interval = 0;
        std::uint64_t block = 0;
    };
    const auto outcomes = run_trials(cfg.run.trials, cfg.run.jobs, [&](std::uint64_t t) {
        auto rng = trial_rng(cfg.run.seed, t);
        std::vector<double> lowest; // ascending, at most k
        Outcome o;
        bool stopped = false;
        double time = 0.0;
        for (;;) {
            time += exponential(rng, 1.0 / x);
            if (time > 1.0 && stopped)
                break;
            const double value = uniform01(rng) * x;
            if (time <= 1.0)
                ++o.interval;
            if (stopped)
                continue;
            ++o.block;
            lowest.insert(std::upper_bound(lowest.begin(), lowest.end(), value), value);
            if (lowest.size() > k)
                lowest.pop_back();
            if (lowest.size() == k) {
                double sum = 0.0;
                for (double v : lowest)
                    sum += v;
                stopped = sum <= budget;
            }
        }
        return o;
    });

    TrafficSummary s;
    s.k = cfg.k;
    s.p_threshold = cfg.p_threshold;
    s.expected = x;
    std::vector<double> per_interval, per_block;
    per_interval.reserve(outcomes.size());
    per_block.reserve(outcomes.size());
    std::uint64_t tail = 0;
    for (const auto& o : outcomes) {
        per_interval.push_back(static_cast<double>(o.interval));
        per_block.push_back(static_cast<double>(o.block));
        if (static_cast<double>(o.interval) > 1.9 * x)
            ++tail;
    }
    s.per_interval = mean_estimate(per_interval);
    s.per_block = mean_estimate(per_block);
    s.tail_19 = static_cast<double>(tail) / static_cast<double>(outcomes.size());
    s.chernoff_19 = stats::chernoff_message_bound(x, 0.9);
    std::sort(per_interval.begin(), per_interval.end());
    s.q99 = sorted_quantile(per_interval, 0.99);
    s.q999 = sorted_quantile(per_interval, 0.999);
    return s;
}

ResultTable traffic_table(const std::vector<TrafficSummary>& rows)
{
    ResultTable t;
    t.columns = {"k", "p", "expected", "mean_per_interval", "ci_low", "ci_high", "tail_1_9y", "chernoff_1_9y",
                 "q99", "q999", "mean_per_block", "trials"};
    for (const auto& r : rows) {
        t.add_row({std::int64_t{r.k}, r.p_threshold, r.expected, r.per_interval.mean, r.per_interval.ci_low,
                   r.per_interval.ci_high, r.tail_19, r.chernoff_19, r.q99, r.q999, r.per_block.mean,
                   static_cast<std::int64_t>(r.per_interval.n)});
    }
    return t;
}

} // namespace bobtail::net
