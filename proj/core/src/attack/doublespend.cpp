#include <bobtail/attack/attack_sim.hpp>

#include <bobtail/common/parallel.hpp>
#include <bobtail/common/rng.hpp>
#include <bobtail/stats/sampling.hpp>

#include <limits>
#include <stdexcept>

namespace bobtail::attack {

void validate(const AttackConfig& cfg)
{
    if (!(cfg.q >= 0.0 && cfg.q < 1.0))
        throw std::invalid_argument("attacker power q must lie in [0, 1)");
    if (cfg.k < 1)
        throw std::invalid_argument("k must be at least 1");
    mining::validate(cfg.run);
}

DoublespendSummary simulate_doublespend(const DoublespendConfig& cfg)
{
    validate(cfg.attack);
    if (cfg.z < 0)
        throw std::invalid_argument("embargo z must be non-negative");
    const int margin = cfg.stop_margin < 0 ? 3 * cfg.z + 5 : cfg.stop_margin;
    if (margin < 1)
        throw std::invalid_argument("stop margin must be positive");
    const double q = cfg.attack.q;
    const int k = cfg.attack.k;
    constexpr double kNever = std::numeric_limits<double>::infinity();

    struct Outcome {
        bool success = false;
        std::uint64_t blocks = 0;
    };
    const auto outcomes = run_trials(cfg.attack.run.trials, cfg.attack.run.jobs, [&](std::uint64_t t) {
        auto rng = trial_rng(cfg.attack.run.seed, t);
        auto next_attacker = [&] { return q > 0.0 ? stats::sample_block_time(k, 1.0, q, rng) : kNever; };
        auto next_honest = [&] { return stats::sample_block_time(k, 1.0, 1.0 - q, rng); };
        double ta = next_attacker();
        double th = next_honest();
        long a = 0, h = 0;
        Outcome o;
        for (;;) {
            if (ta < th) {
                ++a;
                ta += next_attacker();
            } else {
                ++h;
                th += next_honest();
            }
            ++o.blocks;
            if (h >= cfg.z + 1 && a > h) {
                o.success = true;
                break;
            }
            if (h - a >= margin)
                break;
        }
        return o;
    });

    std::uint64_t wins = 0, blocks = 0;
    for (const auto& o : outcomes) {
        wins += o.success ? 1 : 0;
        blocks += o.blocks;
    }
    return {q, k, cfg.z, proportion_estimate(wins, outcomes.size()),
            static_cast<double>(blocks) / static_cast<double>(outcomes.size())};
}

} // namespace bobtail::attack
