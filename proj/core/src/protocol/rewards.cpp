#include <bobtail/protocol/rewards.hpp>

#include <bobtail/protocol/merkle.hpp>

#include <algorithm>
#include <stdexcept>

namespace bobtail::protocol {

std::map<Address, Amount> allocate_slots(std::span<const RewardSlot> slots, const RewardParams& reward)
{
    std::map<Address, Amount> out;
    if (slots.empty())
        return out;
    const Address& author = slots.front().address;
    out[author] += reward.primary + reward.bonus;
    for (std::size_t i = 1; i < slots.size(); ++i) {
        const auto& s = slots[i];
        const Amount earned = reward.primary + (s.supports_first ? reward.bonus : 0);
        out[s.forfeited ? author : s.address] += earned;
    }
    return out;
}

Amount block_payout(std::span<const RewardSlot> slots, const RewardParams& reward)
{
    if (slots.empty())
        return 0;
    const auto supporting = std::count_if(slots.begin() + 1, slots.end(),
                                          [](const RewardSlot& s) { return s.supports_first; });
    return static_cast<Amount>(slots.size()) * reward.primary + (1 + supporting) * reward.bonus;
}

std::vector<std::size_t> implicated_proofs(const Block& block, const Digest& digest)
{
    std::vector<std::size_t> out;
    for (const auto& bounty : block.bounties) {
        std::size_t hit = 0;
        for (std::size_t i = 1; i < block.proofs.size() && hit == 0; ++i) {
            if (block.proofs[i].merkle_root == bounty.target_root)
                hit = i;
        }
        if (hit == 0)
            throw std::invalid_argument("bounty targets no proof in the package");
        if (!verify_bounty(bounty, bounty.target_root, digest))
            throw std::invalid_argument("bounty Merkle path does not verify");
        const bool conflicting =
            std::any_of(block.transactions.begin(), block.transactions.end(),
                        [&](const Transaction& tx) { return tx.conflicts(bounty.tx); });
        if (!conflicting)
            throw std::invalid_argument("bounty transaction conflicts with nothing in the block");
        // Every proof sharing the exposed root is implicated.
        for (std::size_t i = 1; i < block.proofs.size(); ++i) {
            if (block.proofs[i].merkle_root == bounty.target_root)
                out.push_back(i);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::map<Address, Amount> allocate_rewards(const Block& block, const RewardParams& reward,
                                           const Digest& digest)
{
    if (block.proofs.empty())
        return {};
    const Uint256 v1 = proof_value(block.proofs.front(), digest);
    std::vector<RewardSlot> slots;
    slots.reserve(block.proofs.size());
    for (std::size_t i = 0; i < block.proofs.size(); ++i)
        slots.push_back({block.proofs[i].address, i > 0 && block.proofs[i].support == v1, false});
    for (std::size_t i : implicated_proofs(block, digest))
        slots[i].forfeited = true;
    return allocate_slots(slots, reward);
}

std::vector<Payout> to_coinbase(const std::map<Address, Amount>& allocation)
{
    std::vector<Payout> out;
    out.reserve(allocation.size());
    for (const auto& [address, amount] : allocation)
        out.push_back({address, amount});
    return out;
}

} // namespace bobtail::protocol
