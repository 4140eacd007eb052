#include <bobtail/attack/attack_sim.hpp>

#include <bobtail/common/parallel.hpp>
#include <bobtail/common/rng.hpp>
#include <bobtail/protocol/policy.hpp>

#include <stdexcept>

namespace bobtail::attack {

DorPolicy parse_dor_policy(const std::string& name)
{
    if (name == "naive")
        return DorPolicy::naive;
    if (name == "convention")
        return DorPolicy::convention;
    throw std::invalid_argument("unknown DoR policy: " + name);
}

std::string to_string(DorPolicy p)
{
    return p == DorPolicy::naive ? "naive" : "convention";
}

DorSummary simulate_dor(const DorConfig& cfg)
{
    mining::validate(cfg.run);
    if (!(cfg.split >= 0.0 && cfg.split <= 1.0))
        throw std::invalid_argument("split must lie in [0, 1]");
    if (!(cfg.latency >= 0.0) || !(cfg.grace >= 0.0) || !(cfg.block_time > 0.0))
        throw std::invalid_argument("latency and grace must be non-negative, T positive");
    if (cfg.k < 2)
        throw std::invalid_argument("k must be at least 2");

    // Same UTXO, same fee: the convention falls back to the lower hash.
    const protocol::Transaction t{7, 10, {'T'}};
    const protocol::Transaction t_prime{7, 10, {'T', '\''}};
    const auto k = static_cast<std::size_t>(cfg.k);

    // What a miner mines at time `at`, given which one it heard first.
    auto mined = [&](bool heard_prime_first, double at) {
        const auto& first = heard_prime_first ? t_prime : t;
        const auto& second = heard_prime_first ? t : t_prime;
        if (at < cfg.latency || cfg.policy == DorPolicy::naive)
            return &first == &t_prime;
        return &protocol::select_canonical_tx(first, second, cfg.latency, cfg.grace) == &t_prime;
    };

    const auto outcomes = run_trials(cfg.run.trials, cfg.run.jobs, [&](std::uint64_t trial) {
        auto rng = trial_rng(cfg.run.seed, trial);
        bool author_prime = false;
        std::uint64_t lost = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const double at = uniform01(rng) * cfg.block_time;
            const bool prime_first = uniform01(rng) < cfg.split;
            const bool prime = mined(prime_first, at);
            if (i == 0)
                author_prime = prime;
            else if (prime != author_prime)
                ++lost;
        }
        return static_cast<double>(lost) / static_cast<double>(k - 1);
    });

    RunningStats frac;
    for (double f : outcomes)
        frac.add(f);
    return {cfg.split, cfg.k, cfg.policy, frac.estimate()};
}

} // namespace bobtail::attack
