#pragma once

#include <bobtail/protocol/types.hpp>

#include <map>
#include <span>

namespace bobtail::protocol {

/// One proof's position in the reward computation. Slot 0 is the 1OS.
struct RewardSlot {
    Address address;
    bool supports_first = false; // s_i == V_1
    bool forfeited = false;      // implicated by a bounty
};

/// Every slot earns R; supporting slots and the 1OS author also earn B.
/// A forfeited slot's R and B go to the 1OS author instead, so the total
/// never depends on bounties.
std::map<Address, Amount> allocate_slots(std::span<const RewardSlot> slots, const RewardParams& reward);

/// k R + B (1 + #supporting slots).
Amount block_payout(std::span<const RewardSlot> slots, const RewardParams& reward);

/// Indices i >= 1 of proofs whose transaction set is exposed by a bounty as
/// conflicting with the block's own transactions. Throws
/// std::invalid_argument for a bounty that targets no non-1OS proof, fails
/// its Merkle check, or exposes nothing in conflict.
std::vector<std::size_t> implicated_proofs(const Block& block, const Digest& digest = default_digest());

/// Coinbase owed for `block`, keyed by address.
std::map<Address, Amount> allocate_rewards(const Block& block, const RewardParams& reward,
                                           const Digest& digest = default_digest());

/// The map as a coinbase list, ascending by address.
std::vector<Payout> to_coinbase(const std::map<Address, Amount>& allocation);

} // namespace bobtail::protocol
