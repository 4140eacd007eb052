#include <bobtail/attack/attack_sim.hpp>

namespace bobtail::attack {

namespace {

std::int64_t count(const Estimate& e)
{
    return static_cast<std::int64_t>(e.n);
}

} // namespace

ResultTable doublespend_table(const std::vector<DoublespendSummary>& rows)
{
    ResultTable t;
    t.columns = {"experiment", "q", "z", "k", "trials", "metric", "ci_low", "ci_high", "mean_blocks"};
    for (const auto& r : rows) {
        t.add_row({std::string("doublespend"), r.q, std::int64_t{r.z}, std::int64_t{r.k}, count(r.success),
                   r.success.mean, r.success.ci_low, r.success.ci_high, r.mean_blocks});
    }
    return t;
}

ResultTable selfish_table(const std::vector<SelfishSummary>& rows)
{
    ResultTable t;
    t.columns = {"experiment", "q", "k", "trials", "metric", "ci_low", "ci_high", "race_win_probability"};
    for (const auto& r : rows) {
        t.add_row({std::string("selfish"), r.q, std::int64_t{r.k}, count(r.share), r.share.mean, r.share.ci_low,
                   r.share.ci_high, r.race_win_probability});
    }
    return t;
}

ResultTable withholding_table(const std::vector<WithholdingSummary>& rows)
{
    ResultTable t;
    t.columns = {"experiment", "q", "k", "trials", "party", "scenario", "primary", "bonus", "total",
                 "ci_low", "ci_high", "fair_share", "author_rate", "unproven_selections"};
    for (const auto& r : rows) {
        auto add = [&](const char* party, const char* scenario, const PartyRewards& p, double fair, double author) {
            t.add_row({std::string("withholding"), r.q, std::int64_t{r.k}, count(p.total), std::string(party),
                       std::string(scenario), p.primary.mean, p.bonus.mean, p.total.mean, p.total.ci_low,
                       p.total.ci_high, fair, author, static_cast<std::int64_t>(r.unproven_selections)});
        };
        add("attacker", "attack", r.attacker, r.attacker_fair_share, r.attacker_author_rate);
        add("honest", "attack", r.honest, r.honest_fair_share, 1.0 - r.attacker_author_rate);
        add("attacker", "baseline", r.attacker_baseline, r.attacker_fair_share, r.attacker_author_rate_baseline);
        add("honest", "baseline", r.honest_baseline, r.honest_fair_share, 1.0 - r.attacker_author_rate_baseline);
    }
    return t;
}

ResultTable zczc_table(const std::vector<ZczcSummary>& rows)
{
    ResultTable t;
    t.columns = {"experiment", "q", "k", "trials", "scenario", "metric", "ci_low", "ci_high"};
    for (const auto& r : rows) {
        auto add = [&](const char* scenario, const Estimate& e) {
            t.add_row({std::string("zczc"), r.q, std::int64_t{r.k}, count(e), std::string(scenario), e.mean,
                       e.ci_low, e.ci_high});
        };
        add("honest_strategy", r.honest_strategy);
        add("with_rule", r.with_rule);
        add("without_rule", r.without_rule);
        add("forfeited_by_attacker", r.forfeited_by_attacker);
        add("forfeited_to_attacker", r.forfeited_to_attacker);
        t.add_row({std::string("zczc"), r.q, std::int64_t{r.k}, count(r.with_rule), std::string("doublespend_rate"),
                   r.doublespend_rate, r.doublespend_rate, r.doublespend_rate});
        const auto unproven = static_cast<double>(r.unproven_selections);
        t.add_row({std::string("zczc"), r.q, std::int64_t{r.k}, count(r.with_rule), std::string("unproven_selections"),
                   unproven, unproven, unproven});
    }
    return t;
}

ResultTable dor_table(const std::vector<DorSummary>& rows)
{
    ResultTable t;
    t.columns = {"experiment", "split", "k", "policy", "trials", "metric", "ci_low", "ci_high"};
    for (const auto& r : rows) {
        t.add_row({std::string("dor"), r.split, std::int64_t{r.k}, to_string(r.policy),
                   count(r.forfeited_fraction), r.forfeited_fraction.mean, r.forfeited_fraction.ci_low,
                   r.forfeited_fraction.ci_high});
    }
    return t;
}

} // namespace bobtail::attack
