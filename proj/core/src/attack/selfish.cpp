#include <bobtail/attack/attack_sim.hpp>

#include <bobtail/common/parallel.hpp>
#include <bobtail/common/rng.hpp>
#include <bobtail/stats/sampling.hpp>

#include <stdexcept>

namespace bobtail::attack {

SelfishSummary simulate_selfish_mining(const SelfishConfig& cfg)
{
    validate(cfg.attack);
    if (cfg.horizon < 1)
        throw std::invalid_argument("horizon must be at least one block");
    const double q = cfg.attack.q;
    const int k = cfg.attack.k;

    struct Outcome {
        double share = 0.0;
        std::uint64_t races = 0;
        std::uint64_t attacker_wins = 0;
    };
    const auto outcomes = run_trials(cfg.attack.run.trials, cfg.attack.run.jobs, [&](std::uint64_t t) {
        auto rng = trial_rng(cfg.attack.run.seed, t);
        std::uint64_t lead = 0, attacker_main = 0, honest_main = 0;
        Outcome o;
        while (attacker_main + honest_main + lead < cfg.horizon) {
            const bool attacker_first =
                q > 0.0 && stats::sample_block_time(k, 1.0, q, rng) < stats::sample_block_time(k, 1.0, 1.0 - q, rng);
            ++o.races;
            if (attacker_first) {
                ++o.attacker_wins;
                ++lead;
            } else if (lead == 0) {
                ++honest_main;
            } else {
                // She publishes one block at this height and wins the race.
                ++attacker_main;
                --lead;
            }
        }
        attacker_main += lead; // the rest of the private branch is published at the end
        o.share = static_cast<double>(attacker_main) / static_cast<double>(attacker_main + honest_main);
        return o;
    });

    RunningStats share;
    std::uint64_t races = 0, wins = 0;
    for (const auto& o : outcomes) {
        share.add(o.share);
        races += o.races;
        wins += o.attacker_wins;
    }
    return {q, k, share.estimate(), static_cast<double>(wins) / static_cast<double>(races)};
}

} // namespace bobtail::attack
