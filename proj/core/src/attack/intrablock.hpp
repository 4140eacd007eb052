#pragma once

#include <bobtail/common/rng.hpp>
#include <bobtail/protocol/types.hpp>

namespace bobtail::attack::detail {

struct EngineConfig {
    double q = 0.0;
    int k = 1;
    int n_honest = 10;
    protocol::RewardParams reward;
    double release_factor = 1.05;
    bool withhold = false;     // attacker keeps proofs private until release
    bool conflicting = false;  // attacker's sets hold T', honest sets hold T
    bool forfeiture = true;    // conflicting proofs pay the 1OS author
};

struct EngineOutcome {
    protocol::Amount attacker_primary = 0;
    protocol::Amount attacker_bonus = 0;
    protocol::Amount honest_primary = 0;
    protocol::Amount honest_bonus = 0;
    protocol::Amount forfeited_by_attacker = 0;
    protocol::Amount forfeited_to_attacker = 0;
    bool attacker_author = false;
    bool forfeiture_event = false;
    bool conserved = true;
    bool selection_unproven = false; // package search hit its node budget
};

/// Mines one block. Units: v = 1, one interval = one expected block time.
EngineOutcome mine_block(const EngineConfig& cfg, Rng& rng);

} // namespace bobtail::attack::detail
