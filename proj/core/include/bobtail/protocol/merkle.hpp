#pragma once

#include <bobtail/protocol/types.hpp>

#include <span>
#include <vector>

namespace bobtail::protocol {

/// Leaves are hashed as digest(0x00 || leaf), inner nodes as
/// digest(0x01 || left || right). Odd levels duplicate their last node.
/// The root of an empty list is zero; a single leaf is its own root.
Uint256 merkle_root_of_leaves(std::span<const Uint256> leaves,
                              const Digest& digest = default_digest());

/// Sibling path from leaf `index` to the root.
std::vector<Uint256> merkle_path(std::span<const Uint256> leaves, std::size_t index,
                                 const Digest& digest = default_digest());

bool verify_merkle_path(const Uint256& leaf, std::uint64_t index, std::span<const Uint256> path,
                        const Uint256& root, const Digest& digest = default_digest());

/// Root over the transaction hashes of `txs` (the m_i of a proof set).
Uint256 transaction_root(std::span<const Transaction> txs, const Digest& digest = default_digest());

/// Root over the proof values of a package, in package order.
Uint256 proof_root(std::span<const ProofSet> proofs, const Digest& digest = default_digest());

Uint256 bounty_root(std::span<const Bounty> bounties, const Digest& digest = default_digest());

/// Bounty exposing `tx_set[index]`. Throws std::out_of_range for a bad index.
Bounty make_bounty(std::span<const Transaction> tx_set, std::size_t index,
                   const Digest& digest = default_digest());

/// True when the bounty's path links its transaction to `root`.
bool verify_bounty(const Bounty& bounty, const Uint256& root, const Digest& digest = default_digest());

} // namespace bobtail::protocol
