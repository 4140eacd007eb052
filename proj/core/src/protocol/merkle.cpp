#include <bobtail/protocol/merkle.hpp>

#include <bobtail/protocol/serialize.hpp>

#include <stdexcept>

namespace bobtail::protocol {

namespace {

Uint256 hash_leaf(const Uint256& leaf, const Digest& digest)
{
    Bytes buf{0x00};
    const auto b = leaf.to_bytes();
    buf.insert(buf.end(), b.begin(), b.end());
    return digest.hash(buf);
}

Uint256 hash_node(const Uint256& left, const Uint256& right, const Digest& digest)
{
    Bytes buf{0x01};
    const auto l = left.to_bytes();
    const auto r = right.to_bytes();
    buf.insert(buf.end(), l.begin(), l.end());
    buf.insert(buf.end(), r.begin(), r.end());
    return digest.hash(buf);
}

std::vector<Uint256> next_level(const std::vector<Uint256>& level, const Digest& digest)
{
    std::vector<Uint256> up;
    up.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i < level.size(); i += 2) {
        const auto& right = i + 1 < level.size() ? level[i + 1] : level[i];
        up.push_back(hash_node(level[i], right, digest));
    }
    return up;
}

std::vector<Uint256> leaf_level(std::span<const Uint256> leaves, const Digest& digest)
{
    std::vector<Uint256> level;
    level.reserve(leaves.size());
    for (const auto& l : leaves)
        level.push_back(hash_leaf(l, digest));
    return level;
}

} // namespace

Uint256 merkle_root_of_leaves(std::span<const Uint256> leaves, const Digest& digest)
{
    if (leaves.empty())
        return Uint256{};
    auto level = leaf_level(leaves, digest);
    while (level.size() > 1)
        level = next_level(level, digest);
    return level.front();
}

std::vector<Uint256> merkle_path(std::span<const Uint256> leaves, std::size_t index,
                                 const Digest& digest)
{
    if (index >= leaves.size())
        throw std::out_of_range("merkle_path: index out of range");
    std::vector<Uint256> path;
    auto level = leaf_level(leaves, digest);
    while (level.size() > 1) {
        const std::size_t sibling = index ^ 1U;
        path.push_back(sibling < level.size() ? level[sibling] : level[index]);
        level = next_level(level, digest);
        index /= 2;
    }
    return path;
}

bool verify_merkle_path(const Uint256& leaf, std::uint64_t index, std::span<const Uint256> path,
                        const Uint256& root, const Digest& digest)
{
    if (path.size() < 64 && (index >> path.size()) != 0)
        return false;
    Uint256 node = hash_leaf(leaf, digest);
    for (const auto& sibling : path) {
        node = (index & 1U) ? hash_node(sibling, node, digest) : hash_node(node, sibling, digest);
        index >>= 1;
    }
    return node == root;
}

Uint256 transaction_root(std::span<const Transaction> txs, const Digest& digest)
{
    std::vector<Uint256> leaves;
    leaves.reserve(txs.size());
    for (const auto& tx : txs)
        leaves.push_back(transaction_hash(tx, digest));
    return merkle_root_of_leaves(leaves, digest);
}

Uint256 proof_root(std::span<const ProofSet> proofs, const Digest& digest)
{
    std::vector<Uint256> leaves;
    leaves.reserve(proofs.size());
    for (const auto& p : proofs)
        leaves.push_back(proof_value(p, digest));
    return merkle_root_of_leaves(leaves, digest);
}

Uint256 bounty_root(std::span<const Bounty> bounties, const Digest& digest)
{
    std::vector<Uint256> leaves;
    leaves.reserve(bounties.size());
    for (const auto& b : bounties)
        leaves.push_back(digest.hash(serialize(b)));
    return merkle_root_of_leaves(leaves, digest);
}

Bounty make_bounty(std::span<const Transaction> tx_set, std::size_t index, const Digest& digest)
{
    if (index >= tx_set.size())
        throw std::out_of_range("make_bounty: index out of range");
    std::vector<Uint256> leaves;
    leaves.reserve(tx_set.size());
    for (const auto& tx : tx_set)
        leaves.push_back(transaction_hash(tx, digest));
    return Bounty{merkle_root_of_leaves(leaves, digest), tx_set[index], index,
                  merkle_path(leaves, index, digest)};
}

bool verify_bounty(const Bounty& bounty, const Uint256& root, const Digest& digest)
{
    return bounty.target_root == root &&
           verify_merkle_path(transaction_hash(bounty.tx, digest), bounty.index, bounty.path, root,
                              digest);
}

} // namespace bobtail::protocol
