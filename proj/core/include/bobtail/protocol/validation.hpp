#pragma once

#include <bobtail/protocol/rewards.hpp>
#include <bobtail/protocol/types.hpp>

#include <optional>
#include <span>
#include <string_view>

namespace bobtail::protocol {

/// Consensus rules for one height: package size k and target t_k, so a
/// package is valid when mean(V_1..V_k) <= t_k.
struct ConsensusParams {
    int k = 1;
    Uint256 target;
};

enum class Verdict {
    accept,
    wrong_proof_count,
    prior_mismatch,
    not_ascending,
    header_mismatch,
    tx_root_mismatch,
    proof_root_mismatch,
    bounty_root_mismatch,
    above_target,
    support_below_first,
    worse_than_seen,
    bad_bounty,
    coinbase_mismatch,
    bad_signature,
};

std::string_view to_string(Verdict v) noexcept;

/// True when the mean of `values` is at most `target`. Sums in 320 bits, so
/// there is no overflow for any k below 2^64.
bool mean_within_target(std::span<const Uint256> values, const Uint256& target);

/// Checks in order: package size, shared prior, strictly ascending values,
/// header consistency with P_1, transaction/proof/bounty roots, the target,
/// supports s_i >= V_1, V_1 against the lowest proof already seen, bounties,
/// coinbase and finally the signature of a_1 over the header. Returns the
/// first failure.
Verdict validate_block(const Block& block, const ConsensusParams& params, const RewardParams& reward,
                       const Signer& signer, std::optional<Uint256> seen_min = std::nullopt,
                       const Digest& digest = default_digest());

} // namespace bobtail::protocol
