#include <bobtail/attack/attack_sim.hpp>

#include "intrablock.hpp"

#include <bobtail/common/parallel.hpp>
#include <bobtail/protocol/assembly.hpp>
#include <bobtail/protocol/rewards.hpp>
#include <bobtail/stats/gamma.hpp>
#include <bobtail/stats/mining_stats.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bobtail::attack {

namespace detail {

namespace {

constexpr int kAttacker = -1;
constexpr double kNever = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxProofs = 1000000;
// Past this many nodes the receipt-time tie-break keeps the best set found.
constexpr std::uint64_t kSearchNodes = 50000;

struct Proof {
    double value;
    double generated;
    double published; // kNever while withheld
    int owner;
    double support;   // value of the supported proof, kNever if none this round
};

class Block {
public:
    Block(const EngineConfig& cfg, Rng& rng)
        : cfg_(cfg), rng_(rng), k_(static_cast<std::size_t>(cfg.k)),
          target_(stats::target_for_k(cfg.k, 1.0)), budget_(static_cast<double>(cfg.k) * target_)
    {
        // Nothing above k t_k can sit in a valid package. Far above the
        // honest-only threshold nothing is ever used either, so cap there.
        const double honest_share = std::max(1.0 - cfg.q, 1e-3);
        cutoff_ = std::min(budget_, 2.0 * stats::gamma_quantile(1.0 - 1e-9, cfg.k, 1.0) / honest_share);
        scale_ = std::ldexp(1.0, 62) / cutoff_;
        target_units_ = protocol::Uint256(static_cast<std::uint64_t>(std::floor(target_ * scale_)));
    }

    EngineOutcome run()
    {
        double now = 0.0;
        for (;;) {
            if (proofs_.size() >= kMaxProofs)
                throw std::runtime_error("intra-block simulation did not converge");
            now += exponential(rng_, 1.0 / cutoff_);
            add_proof(now);
            if (try_attacker())
                break;
            maybe_release(now);
            if (try_honest())
                break;
        }
        return out_;
    }

private:
    bool visible(const Proof& p) const { return p.published < kNever; }

    void add_proof(double now)
    {
        Proof p{uniform01(rng_) * cutoff_, now, now, 0, kNever};
        p.owner = uniform01(rng_) < cfg_.q ? kAttacker
                                           : static_cast<int>(rng_() % static_cast<std::uint64_t>(cfg_.n_honest));
        const bool secret = p.owner == kAttacker && cfg_.withhold && !released_;
        // Honest miners support the lowest proof they have seen; the
        // withholding attacker sees everything.
        const auto& seen = p.owner == kAttacker && cfg_.withhold ? all_ : public_;
        if (!seen.empty())
            p.support = proofs_[seen.front()].value;
        if (secret)
            p.published = kNever;
        proofs_.push_back(p);
        const std::size_t id = proofs_.size() - 1;
        insert(all_, id);
        if (!secret)
            insert(public_, id);
    }

    void insert(std::vector<std::size_t>& list, std::size_t id)
    {
        const double v = proofs_[id].value;
        const auto at = std::upper_bound(list.begin(), list.end(), v,
                                         [&](double x, std::size_t j) { return x < proofs_[j].value; });
        list.insert(at, id);
    }

    /// Sum of the k lowest entries of `list` whose support is at least V_1.
    /// Returns +inf when fewer than k qualify.
    double cheapest(const std::vector<std::size_t>& list) const
    {
        if (list.size() < k_)
            return kNever;
        const double v1 = proofs_[list.front()].value;
        double sum = 0.0;
        std::size_t used = 0;
        for (std::size_t id : list) {
            const auto& p = proofs_[id];
            if (used > 0 && p.support < v1)
                continue;
            sum += p.value;
            if (++used == k_)
                return sum;
        }
        return kNever;
    }

    bool try_attacker()
    {
        if (all_.empty() || proofs_[all_.front()].owner != kAttacker)
            return false;
        if (cheapest(all_) > budget_)
            return false;
        return assemble(all_, kAttacker);
    }

    void maybe_release(double now)
    {
        if (!cfg_.withhold || released_ || public_.empty() || proofs_[public_.front()].owner == kAttacker)
            return;
        if (cheapest(public_) > cfg_.release_factor * budget_)
            return;
        released_ = true;
        for (std::size_t id = 0; id < proofs_.size(); ++id) {
            if (!visible(proofs_[id])) {
                proofs_[id].published = now;
                insert(public_, id);
            }
        }
    }

    bool try_honest()
    {
        if (public_.empty())
            return false;
        const int author = proofs_[public_.front()].owner;
        if (author == kAttacker)
            return false; // only she can sign for her 1OS, handled above
        if (cheapest(public_) > budget_)
            return false;
        return assemble(public_, author);
    }

    bool conflicts(int a, int b) const
    {
        return cfg_.conflicting && ((a == kAttacker) != (b == kAttacker));
    }

    protocol::Amount pay(const Proof& p, double v1) const
    {
        return cfg_.reward.primary + (p.support == v1 ? cfg_.reward.bonus : 0);
    }

    protocol::Uint256 units(double value) const
    {
        return protocol::Uint256(static_cast<std::uint64_t>(value * scale_));
    }

    bool assemble(const std::vector<std::size_t>& list, int author)
    {
        const auto& first = proofs_[list.front()];
        const double v1 = first.value;
        std::vector<protocol::SelectionCandidate> pool;
        std::vector<std::size_t> ids;
        pool.push_back({units(v1), cfg_.reward.primary + cfg_.reward.bonus, first.generated});
        ids.push_back(list.front());
        for (std::size_t i = 1; i < list.size(); ++i) {
            const auto& p = proofs_[list[i]];
            if (p.support < v1)
                continue;
            const bool mine = p.owner == author;
            const bool claimable = cfg_.forfeiture && conflicts(author, p.owner);
            const double received = mine ? p.generated : p.published;
            pool.push_back({units(p.value), mine || claimable ? pay(p, v1) : 0, received});
            ids.push_back(list[i]);
        }
        const auto result = protocol::select_package_limited(pool, cfg_.k, target_units_, kSearchNodes);
        if (!result)
            return false;
        const auto* picked = &result->indices;
        out_.selection_unproven = !result->proven_optimal;

        std::vector<protocol::RewardSlot> slots;
        for (std::size_t n = 0; n < picked->size(); ++n) {
            const auto& p = proofs_[ids[(*picked)[n]]];
            protocol::RewardSlot s;
            s.address = address(p.owner);
            s.supports_first = n > 0 && p.support == v1;
            s.forfeited = n > 0 && cfg_.forfeiture && conflicts(author, p.owner);
            slots.push_back(s);

            const protocol::Amount b = (n == 0 || s.supports_first) ? cfg_.reward.bonus : 0;
            const int paid_to = s.forfeited ? author : p.owner;
            credit(paid_to, cfg_.reward.primary, b);
            if (s.forfeited) {
                out_.forfeiture_event = true;
                if (p.owner == kAttacker)
                    out_.forfeited_by_attacker += cfg_.reward.primary + b;
                else
                    out_.forfeited_to_attacker += cfg_.reward.primary + b;
            }
        }
        const auto paid = protocol::allocate_slots(slots, cfg_.reward);
        protocol::Amount sum = 0;
        for (const auto& [addr, amount] : paid)
            sum += amount;
        const protocol::Amount attacker_paid = paid.contains(address(kAttacker)) ? paid.at(address(kAttacker)) : 0;
        out_.conserved = sum == protocol::block_payout(slots, cfg_.reward) &&
                         attacker_paid == out_.attacker_primary + out_.attacker_bonus;
        out_.attacker_author = author == kAttacker;
        return true;
    }

    void credit(int owner, protocol::Amount primary, protocol::Amount bonus)
    {
        if (owner == kAttacker) {
            out_.attacker_primary += primary;
            out_.attacker_bonus += bonus;
        } else {
            out_.honest_primary += primary;
            out_.honest_bonus += bonus;
        }
    }

    static protocol::Address address(int owner)
    {
        return protocol::Address{protocol::Uint256(static_cast<std::uint64_t>(owner + 1))};
    }

    const EngineConfig& cfg_;
    Rng& rng_;
    std::size_t k_;
    double target_;
    double budget_;
    double cutoff_ = 0.0;
    double scale_ = 0.0;
    protocol::Uint256 target_units_;
    std::vector<Proof> proofs_;
    std::vector<std::size_t> all_;    // ascending by value
    std::vector<std::size_t> public_; // ascending by value
    bool released_ = false;
    EngineOutcome out_;
};

} // namespace

EngineOutcome mine_block(const EngineConfig& cfg, Rng& rng)
{
    if (cfg.n_honest < 1)
        throw std::invalid_argument("need at least one honest miner");
    if (!(cfg.release_factor >= 1.0))
        throw std::invalid_argument("release factor must be at least 1");
    return Block(cfg, rng).run();
}

} // namespace detail

namespace {

struct PartyAccumulator {
    RunningStats primary, bonus, total;

    void add(protocol::Amount p, protocol::Amount b)
    {
        primary.add(static_cast<double>(p));
        bonus.add(static_cast<double>(b));
        total.add(static_cast<double>(p + b));
    }

    PartyRewards result() const { return {primary.estimate(), bonus.estimate(), total.estimate()}; }
};

} // namespace

WithholdingSummary simulate_withholding(const WithholdingConfig& cfg)
{
    validate(cfg.attack);
    detail::EngineConfig attack{cfg.attack.q, cfg.attack.k, cfg.n_honest, cfg.reward, cfg.release_factor,
                                true, false, true};
    detail::EngineConfig honest = attack;
    honest.withhold = false;

    struct Outcome {
        detail::EngineOutcome attacked, baseline;
    };
    const auto outcomes = run_trials(cfg.attack.run.trials, cfg.attack.run.jobs, [&](std::uint64_t t) {
        // Both runs start from the same stream, so they differ only through
        // the attacker's behaviour.
        auto rng_a = trial_rng(cfg.attack.run.seed, t);
        auto rng_b = trial_rng(cfg.attack.run.seed, t);
        return Outcome{detail::mine_block(attack, rng_a), detail::mine_block(honest, rng_b)};
    });

    PartyAccumulator att, hon, att0, hon0;
    std::uint64_t authored = 0, authored0 = 0;
    WithholdingSummary s;
    for (const auto& o : outcomes) {
        att.add(o.attacked.attacker_primary, o.attacked.attacker_bonus);
        hon.add(o.attacked.honest_primary, o.attacked.honest_bonus);
        att0.add(o.baseline.attacker_primary, o.baseline.attacker_bonus);
        hon0.add(o.baseline.honest_primary, o.baseline.honest_bonus);
        authored += o.attacked.attacker_author ? 1 : 0;
        authored0 += o.baseline.attacker_author ? 1 : 0;
        if (!o.attacked.conserved || !o.baseline.conserved)
            ++s.conservation_failures;
        s.unproven_selections += (o.attacked.selection_unproven ? 1 : 0) + (o.baseline.selection_unproven ? 1 : 0);
    }
    const double n = static_cast<double>(outcomes.size());
    const double R = static_cast<double>(cfg.reward.primary);
    const double B = static_cast<double>(cfg.reward.bonus);
    const double k = cfg.attack.k;
    s.q = cfg.attack.q;
    s.k = cfg.attack.k;
    s.attacker = att.result();
    s.honest = hon.result();
    s.attacker_baseline = att0.result();
    s.honest_baseline = hon0.result();
    s.attacker_fair_share = cfg.attack.q * k * (R + B / 2.0);
    s.honest_fair_share = (1.0 - cfg.attack.q) * k * (R + B / 2.0);
    s.attacker_author_rate = static_cast<double>(authored) / n;
    s.attacker_author_rate_baseline = static_cast<double>(authored0) / n;
    return s;
}

} // namespace bobtail::attack
