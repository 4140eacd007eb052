#pragma once

// Hand-built proofs, keys and blocks shared by the protocol tests and the
// acceptance property suite.

#include <bobtail/common/rng.hpp>
#include <bobtail/protocol/assembly.hpp>
#include <bobtail/protocol/merkle.hpp>
#include <bobtail/protocol/serialize.hpp>

#include <algorithm>
#include <optional>
#include <vector>

namespace bobtail::protocol::fixture {

inline Uint256 random_u256(Rng& rng)
{
    Uint256 x;
    for (std::size_t i = 0; i < 4; ++i)
        x.set_limb(i, rng());
    return x;
}

inline Transaction random_tx(Rng& rng)
{
    Transaction tx{rng() % 1000, static_cast<Amount>(rng() % 50), {}};
    tx.payload.resize(rng() % 20);
    for (auto& b : tx.payload)
        b = static_cast<std::uint8_t>(rng());
    return tx;
}

/// A small world: miners with keys, one prior, one transaction set per miner.
struct World {
    StubSigner signer;
    std::vector<KeyPair> keys;
    std::vector<std::vector<Transaction>> txs;
    Uint256 prior{0xabcdef};
    std::uint64_t next_nonce = 1;

    explicit World(int miners)
    {
        for (int m = 0; m < miners; ++m) {
            keys.push_back(signer.generate(static_cast<std::uint64_t>(m)));
            txs.push_back({{static_cast<std::uint64_t>(100 + m), 1, {1, 2, 3}}, {7, 2, {static_cast<std::uint8_t>(m)}}});
        }
    }

    CandidateProof mine(int m, const Uint256& support, double t)
    {
        NonceBody body{1, 1, 1000, next_nonce++, {}};
        ProofSet p{prior, transaction_root(txs[m]), keys[m].address, support, nonce_commitment(body)};
        return {p, t, body};
    }
};

inline std::vector<Uint256> values_of(const Block& b)
{
    std::vector<Uint256> v;
    for (const auto& p : b.proofs)
        v.push_back(proof_value(p));
    return v;
}

inline const ConsensusParams kEasy3{3, Uint256::max()};
inline const RewardParams kReward{2, 1};

/// Assembles for whichever miner owns the lowest candidate.
inline std::optional<Block> assemble_for(World& w, const std::vector<CandidateProof>& cands, int m,
                                  const ConsensusParams& params = kEasy3)
{
    AssemblyRequest req{cands, w.txs[m], {}, w.keys[m]};
    // Foreign proofs have no nonce body.
    for (auto& c : req.candidates)
        if (c.proof.address != w.keys[m].address)
            c.nonce.reset();
    return assemble_proof_package(req, params, kReward, w.signer);
}

/// Mines for miner m until it beats every value in `others`.
inline CandidateProof mine_lowest(World& w, int m, const std::vector<CandidateProof>& others)
{
    Uint256 floor = Uint256::max();
    for (const auto& c : others)
        floor = std::min(floor, proof_value(c.proof));
    for (;;) {
        auto c = w.mine(m, Uint256::max(), -1.0);
        if (proof_value(c.proof) < floor)
            return c;
    }
}

inline int lowest_owner(const World& w, const std::vector<CandidateProof>& cands)
{
    auto it = std::min_element(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
        return proof_value(a.proof) < proof_value(b.proof);
    });
    for (std::size_t m = 0; m < w.keys.size(); ++m)
        if (w.keys[m].address == it->proof.address)
            return static_cast<int>(m);
    return -1;
}

/// A random block with every list populated, for round-trip checks.
inline Block random_block(Rng& rng)
{
    Block b;
    b.header = {3, random_u256(rng), rng(), rng(), rng(), random_u256(rng), random_u256(rng), random_u256(rng),
                random_u256(rng)};
    for (int i = 0, n = 1 + static_cast<int>(rng() % 4); i < n; ++i)
        b.transactions.push_back(random_tx(rng));
    for (int i = 0, n = static_cast<int>(rng() % 5); i < n; ++i)
        b.proofs.push_back({random_u256(rng), random_u256(rng), {random_u256(rng)}, random_u256(rng), random_u256(rng)});
    b.bounties.push_back(make_bounty(b.transactions, rng() % b.transactions.size()));
    b.coinbase.push_back({{random_u256(rng)}, static_cast<Amount>(rng() % 100)});
    b.signature = {random_u256(rng)};
    return b;
}

} // namespace bobtail::protocol::fixture
