#include <bobtail/protocol/validation.hpp>

#include <bobtail/protocol/merkle.hpp>
#include <bobtail/protocol/serialize.hpp>

#include <stdexcept>

namespace bobtail::protocol {

std::string_view to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::accept: return "accept";
    case Verdict::wrong_proof_count: return "wrong_proof_count";
    case Verdict::prior_mismatch: return "prior_mismatch";
    case Verdict::not_ascending: return "not_ascending";
    case Verdict::header_mismatch: return "header_mismatch";
    case Verdict::tx_root_mismatch: return "tx_root_mismatch";
    case Verdict::proof_root_mismatch: return "proof_root_mismatch";
    case Verdict::bounty_root_mismatch: return "bounty_root_mismatch";
    case Verdict::above_target: return "above_target";
    case Verdict::support_below_first: return "support_below_first";
    case Verdict::worse_than_seen: return "worse_than_seen";
    case Verdict::bad_bounty: return "bad_bounty";
    case Verdict::coinbase_mismatch: return "coinbase_mismatch";
    case Verdict::bad_signature: return "bad_signature";
    }
    return "unknown";
}

bool mean_within_target(std::span<const Uint256> values, const Uint256& target)
{
    if (values.empty())
        return false;
    Uint320 sum;
    for (const auto& v : values)
        sum += v.resize<5>();
    return sum <= target.resize<5>() * static_cast<std::uint64_t>(values.size());
}

Verdict validate_block(const Block& block, const ConsensusParams& params, const RewardParams& reward,
                       const Signer& signer, std::optional<Uint256> seen_min, const Digest& digest)
{
    const auto& h = block.header;
    if (params.k < 1 || block.proofs.size() != static_cast<std::size_t>(params.k))
        return Verdict::wrong_proof_count;

    for (const auto& p : block.proofs) {
        if (p.prior != h.prior)
            return Verdict::prior_mismatch;
    }

    std::vector<Uint256> values;
    values.reserve(block.proofs.size());
    for (const auto& p : block.proofs) {
        values.push_back(proof_value(p, digest));
        if (values.size() > 1 && !(values[values.size() - 2] < values.back()))
            return Verdict::not_ascending;
    }

    const auto& first = block.proofs.front();
    const NonceBody body{h.version, h.difficulty, h.timestamp, h.subnonce, {}};
    if (first.merkle_root != h.tx_root || first.support != h.support ||
        first.nonce_commitment != nonce_commitment(body, digest))
        return Verdict::header_mismatch;

    if (transaction_root(block.transactions, digest) != h.tx_root)
        return Verdict::tx_root_mismatch;
    if (proof_root(block.proofs, digest) != h.proof_root)
        return Verdict::proof_root_mismatch;
    if (bounty_root(block.bounties, digest) != h.bounty_root)
        return Verdict::bounty_root_mismatch;

    if (!mean_within_target(values, params.target))
        return Verdict::above_target;

    for (std::size_t i = 1; i < block.proofs.size(); ++i) {
        if (block.proofs[i].support < values.front())
            return Verdict::support_below_first;
    }

    if (seen_min && *seen_min < values.front())
        return Verdict::worse_than_seen;

    std::map<Address, Amount> owed;
    try {
        owed = allocate_rewards(block, reward, digest);
    } catch (const std::invalid_argument&) {
        return Verdict::bad_bounty;
    }
    if (block.coinbase != to_coinbase(owed))
        return Verdict::coinbase_mismatch;

    if (!signer.verify(serialize(h), block.signature, first.address))
        return Verdict::bad_signature;
    return Verdict::accept;
}

} // namespace bobtail::protocol
