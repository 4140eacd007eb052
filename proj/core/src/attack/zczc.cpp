#include <bobtail/attack/attack_sim.hpp>

#include "intrablock.hpp"

#include <bobtail/common/parallel.hpp>

namespace bobtail::attack {

ZczcSummary simulate_zczc(const ZczcConfig& cfg)
{
    const auto& base = cfg.base;
    validate(base.attack);
    const detail::EngineConfig honest{base.attack.q, base.attack.k, base.n_honest, base.reward, base.release_factor,
                                      false, false, true};
    detail::EngineConfig with_rule = honest;
    with_rule.withhold = true;
    with_rule.conflicting = true;
    detail::EngineConfig without_rule = with_rule;
    without_rule.forfeiture = false;

    struct Outcome {
        detail::EngineOutcome honest, with_rule, without_rule;
    };
    const auto outcomes = run_trials(base.attack.run.trials, base.attack.run.jobs, [&](std::uint64_t t) {
        auto r1 = trial_rng(base.attack.run.seed, t);
        auto r2 = trial_rng(base.attack.run.seed, t);
        auto r3 = trial_rng(base.attack.run.seed, t);
        return Outcome{detail::mine_block(honest, r1), detail::mine_block(with_rule, r2),
                       detail::mine_block(without_rule, r3)};
    });

    RunningStats h, w, wo, lost, gained;
    ZczcSummary s;
    std::uint64_t confirmed = 0;
    auto total = [](const detail::EngineOutcome& o) {
        return static_cast<double>(o.attacker_primary + o.attacker_bonus);
    };
    for (const auto& o : outcomes) {
        h.add(total(o.honest));
        w.add(total(o.with_rule));
        wo.add(total(o.without_rule));
        lost.add(static_cast<double>(o.with_rule.forfeited_by_attacker));
        gained.add(static_cast<double>(o.with_rule.forfeited_to_attacker));
        s.forfeiture_events += o.with_rule.forfeiture_event ? 1 : 0;
        confirmed += o.with_rule.attacker_author ? 1 : 0;
        if (!o.honest.conserved || !o.with_rule.conserved || !o.without_rule.conserved)
            ++s.conservation_failures;
        for (const auto* e : {&o.honest, &o.with_rule, &o.without_rule})
            s.unproven_selections += e->selection_unproven ? 1 : 0;
    }
    s.q = base.attack.q;
    s.k = base.attack.k;
    s.honest_strategy = h.estimate();
    s.with_rule = w.estimate();
    s.without_rule = wo.estimate();
    s.forfeited_by_attacker = lost.estimate();
    s.forfeited_to_attacker = gained.estimate();
    s.doublespend_rate = static_cast<double>(confirmed) / static_cast<double>(outcomes.size());
    return s;
}

} // namespace bobtail::attack
