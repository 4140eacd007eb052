#pragma once

#include <bobtail/protocol/types.hpp>
#include <bobtail/protocol/validation.hpp>

#include <optional>
#include <span>
#include <vector>

namespace bobtail::protocol {

/// Input to the package selection search. Candidates must be sorted by
/// strictly ascending value; candidate 0 is the assembler's 1OS and is
/// always included.
struct SelectionCandidate {
    Uint256 value;
    Amount reward = 0;        // what including this proof pays the assembler
    double receipt_time = 0.0;
};

/// Picks the k-subset containing candidate 0 with mean value <= target that
/// (1) maximizes total reward, (2) then minimizes the summed receipt time,
/// (3) then is lexicographically first by index. Returns ascending indices,
/// or nullopt when no subset qualifies. Exact branch-and-bound.
std::optional<std::vector<std::size_t>> select_package(std::span<const SelectionCandidate> candidates,
                                                       int k, const Uint256& target);

struct SelectionResult {
    std::vector<std::size_t> indices;
    /// False when the node budget ran out before the search finished. The
    /// reward is still maximal (it is computed separately); the receipt-time
    /// tie-break is then the best found, not necessarily the best.
    bool proven_optimal = true;
    std::uint64_t nodes = 0;
};

/// select_package with a cap on search nodes; 0 means no cap.
std::optional<SelectionResult> select_package_limited(std::span<const SelectionCandidate> candidates, int k,
                                                      const Uint256& target, std::uint64_t max_nodes);

/// A proof known to the assembler, with the time it was generated (own
/// proofs) or received (foreign proofs). Own proofs carry their nonce body.
struct CandidateProof {
    ProofSet proof;
    double receipt_time = 0.0;
    std::optional<NonceBody> nonce;
};

struct AssemblyRequest {
    std::vector<CandidateProof> candidates;
    std::vector<Transaction> transactions; // T_1, the transaction set of the 1OS
    std::vector<Bounty> bounties;          // offered; kept only if their target is packaged
    KeyPair key;
};

/// Builds and signs a block when the lowest candidate is the caller's own
/// proof. Foreign proofs with support below V_1 or a different prior are
/// dropped, own proofs and bounty-implicated proofs are preferred, and ties
/// go to the proofs received earliest. Returns nullopt when the caller does
/// not hold the 1OS or no package meets the target. Throws
/// std::invalid_argument when `transactions` does not match the 1OS root.
std::optional<Block> assemble_proof_package(const AssemblyRequest& request, const ConsensusParams& params,
                                            const RewardParams& reward, const Signer& signer,
                                            const Digest& digest = default_digest());

} // namespace bobtail::protocol
