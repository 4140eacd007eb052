#pragma once

#include <bobtail/common/results.hpp>
#include <bobtail/common/summary.hpp>
#include <bobtail/mining/mining_sim.hpp>
#include <bobtail/protocol/types.hpp>

#include <vector>

namespace bobtail::attack {

/// q is the attacker's share of the hash rate; honest miners hold 1 - q.
struct AttackConfig {
    double q = 0.4;
    int k = 1;
    mining::TrialConfig run{10000, 1, 1};
};

// ---- doublespend ---------------------------------------------------------

struct DoublespendConfig {
    AttackConfig attack;
    int z = 8;             // merchant's embargo, in blocks
    int stop_margin = -1;  // give up when honest lead this much; -1 means 3z + 5
};

struct DoublespendSummary {
    double q = 0.0;
    int k = 1;
    int z = 0;
    Estimate success;
    double mean_blocks = 0.0; // blocks mined by both sides per trial
};

/// Both branches mine privately from the fork point with block times drawn
/// from Y_k at their own hash share. The attacker wins once the honest
/// branch holds the payment plus z confirmations (z + 1 blocks) and the
/// attacker branch is strictly longer; she gives up when the honest branch
/// leads by the stop margin.
DoublespendSummary simulate_doublespend(const DoublespendConfig& cfg);

// ---- selfish mining ------------------------------------------------------

struct SelfishConfig {
    AttackConfig attack;
    std::uint64_t horizon = 10000; // main-chain blocks per trial
};

struct SelfishSummary {
    double q = 0.0;
    int k = 1;
    Estimate share;                 // attacker's fraction of main-chain blocks
    double race_win_probability = 0.0; // P(attacker finds the next block first)
};

/// Lead-based selfish mining where the attacker wins every race. Each block
/// height is a fresh race between the two sides' Y_k times. An attacker win
/// extends the private lead; an honest win with no lead goes on the main
/// chain, otherwise the attacker publishes one block that overrides it.
SelfishSummary simulate_selfish_mining(const SelfishConfig& cfg);

// ---- proof withholding and ZCZC --------------------------------------------

struct PartyRewards {
    Estimate primary;
    Estimate bonus;
    Estimate total;
};

struct WithholdingConfig {
    AttackConfig attack{0.3, 40, {10000, 1, 1}};
    protocol::RewardParams reward{1, 1};
    int n_honest = 10;
    /// The attacker releases once the honest miners' best package mean is
    /// within this factor of the target.
    double release_factor = 1.05;
};

struct WithholdingSummary {
    double q = 0.0;
    int k = 1;
    PartyRewards attacker;
    PartyRewards honest;             // all honest miners together
    PartyRewards attacker_baseline;  // same run with the attacker honest
    PartyRewards honest_baseline;
    double attacker_fair_share = 0.0;      // q k (R + B/2)
    double honest_fair_share = 0.0;
    double attacker_author_rate = 0.0;
    double attacker_author_rate_baseline = 0.0;
    std::uint64_t conservation_failures = 0;
    std::uint64_t unproven_selections = 0; // packages whose time tie-break was not proven optimal
};

/// Intra-block simulation with zero network delay. Proofs arrive as a
/// Poisson process with uniform values; each honest proof supports the
/// lowest public proof. The withholding attacker keeps her proofs private and
/// supports the lowest proof overall. She publishes a block as soon as she
/// holds the lowest proof and can meet the target, or releases her proofs
/// when the honest miners are close to a block. Assemblers prefer their own
/// proofs, then foreign proofs in order of receipt.
WithholdingSummary simulate_withholding(const WithholdingConfig& cfg);

struct ZczcConfig {
    WithholdingConfig base;
};

struct ZczcSummary {
    double q = 0.0;
    int k = 1;
    Estimate honest_strategy;   // attacker total when she mines honestly
    Estimate with_rule;         // ZCZC with forfeiture to P_1
    Estimate without_rule;      // ZCZC when bounties carry no penalty
    Estimate forfeited_by_attacker;
    Estimate forfeited_to_attacker;
    double doublespend_rate = 0.0; // blocks confirming T'
    std::uint64_t forfeiture_events = 0;
    std::uint64_t conservation_failures = 0;
    std::uint64_t unproven_selections = 0;
};

/// The attacker mines every proof on a transaction set holding T' while the
/// honest miners hold T, and keeps her proofs private as in the withholding
/// attack so the conflict is not visible early. With the rule on, the 1OS
/// author claims the rewards of every packaged proof whose set conflicts
/// with T_1.
ZczcSummary simulate_zczc(const ZczcConfig& cfg);

// ---- denial of reward ------------------------------------------------------

enum class DorPolicy { naive, convention };

struct DorConfig {
    double split = 0.5;        // fraction of miners that hear T' first
    double latency = 2.0;      // seconds until every miner has both
    double grace = 5.0;        // convention's "few seconds"
    double block_time = 600.0; // T, seconds
    int k = 40;
    DorPolicy policy = DorPolicy::convention;
    mining::TrialConfig run{10000, 1, 1};
};

struct DorSummary {
    double split = 0.0;
    int k = 1;
    DorPolicy policy = DorPolicy::naive;
    Estimate forfeited_fraction; // of proofs 2..k
};

/// T and T' reach the two groups at time 0 and everyone else `latency`
/// seconds later; the k lowest proofs of the block are generated at uniform
/// times over the block. Naive miners keep mining whatever they heard first.
/// Convention miners switch to the canonical choice once both are known
/// within the grace period.
DorSummary simulate_dor(const DorConfig& cfg);

DorPolicy parse_dor_policy(const std::string& name);
std::string to_string(DorPolicy p);

ResultTable doublespend_table(const std::vector<DoublespendSummary>& rows);
ResultTable selfish_table(const std::vector<SelfishSummary>& rows);
ResultTable withholding_table(const std::vector<WithholdingSummary>& rows);
ResultTable zczc_table(const std::vector<ZczcSummary>& rows);
ResultTable dor_table(const std::vector<DorSummary>& rows);

/// Throws std::invalid_argument for q outside [0, 1), k < 1 or zero trials.
void validate(const AttackConfig& cfg);

} // namespace bobtail::attack
