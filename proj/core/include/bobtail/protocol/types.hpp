#pragma once

#include <bobtail/protocol/digest.hpp>
#include <bobtail/protocol/uint256.hpp>

#include <cstdint>
#include <vector>

namespace bobtail::protocol {

/// Coin amounts in indivisible base units.
using Amount = std::int64_t;

/// Opaque transaction. Two transactions conflict when they spend the same
/// output with different contents.
struct Transaction {
    std::uint64_t utxo_id = 0;
    Amount fee = 0;
    Bytes payload;

    bool conflicts(const Transaction& other) const noexcept
    {
        return utxo_id == other.utxo_id && (fee != other.fee || payload != other.payload);
    }

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

/// Committed nonce data: N_i = digest(NonceBody).
struct NonceBody {
    std::uint32_t version = 1;
    std::uint64_t difficulty = 0;
    std::uint64_t timestamp = 0;
    std::uint64_t nonce = 0;
    Bytes extras;

    friend bool operator==(const NonceBody&, const NonceBody&) = default;
};

struct ProofSet {
    Uint256 prior;
    Uint256 merkle_root;
    Address address;
    Uint256 support;
    Uint256 nonce_commitment;

    friend bool operator==(const ProofSet&, const ProofSet&) = default;
};

struct Header {
    std::uint32_t version = 1;
    Uint256 prior;
    std::uint64_t difficulty = 0;
    std::uint64_t timestamp = 0;
    std::uint64_t subnonce = 0;
    Uint256 tx_root;
    Uint256 support;
    Uint256 proof_root;
    Uint256 bounty_root;

    friend bool operator==(const Header&, const Header&) = default;
};

/// Merkle proof that the transaction set with root `target_root` contains
/// `tx`. `index` is the leaf position, which fixes the side of each sibling.
struct Bounty {
    Uint256 target_root;
    Transaction tx;
    std::uint64_t index = 0;
    std::vector<Uint256> path;

    friend bool operator==(const Bounty&, const Bounty&) = default;
};

struct Payout {
    Address address;
    Amount amount = 0;

    friend bool operator==(const Payout&, const Payout&) = default;
};

struct Block {
    Header header;
    std::vector<Transaction> transactions;
    std::vector<ProofSet> proofs; // ascending by proof value
    std::vector<Bounty> bounties;
    std::vector<Payout> coinbase; // ascending by address
    Signature signature;

    friend bool operator==(const Block&, const Block&) = default;
};

/// R is paid for every proof in the package, B for every proof supporting
/// the 1OS and to the 1OS author.
struct RewardParams {
    Amount primary = 2;
    Amount bonus = 1;
};

/// V_i = digest(o, m_i, a_i, s_i, N_i), fields as 32-byte little-endian words.
Uint256 proof_value(const ProofSet& proof, const Digest& digest = default_digest());

Uint256 nonce_commitment(const NonceBody& body, const Digest& digest = default_digest());

Uint256 transaction_hash(const Transaction& tx, const Digest& digest = default_digest());

} // namespace bobtail::protocol
