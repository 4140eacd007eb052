#include <bobtail/protocol/json.hpp>

#include <json.hpp>

namespace bobtail::protocol {

namespace {

using nlohmann::ordered_json;

std::string hex(const Bytes& bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(2 * bytes.size());
    for (auto b : bytes) {
        s += digits[b >> 4];
        s += digits[b & 0xf];
    }
    return s;
}

ordered_json proof_json(const ProofSet& p)
{
    return {{"value", proof_value(p).to_hex()},
            {"prior", p.prior.to_hex()},
            {"merkle_root", p.merkle_root.to_hex()},
            {"address", p.address.id.to_hex()},
            {"support", p.support.to_hex()},
            {"nonce_commitment", p.nonce_commitment.to_hex()}};
}

ordered_json tx_json(const Transaction& tx)
{
    return {{"utxo_id", tx.utxo_id}, {"fee", tx.fee}, {"payload", hex(tx.payload)}};
}

} // namespace

std::string to_json(const ProofSet& proof, int indent)
{
    return proof_json(proof).dump(indent);
}

std::string to_json(const Block& block, int indent)
{
    const auto& h = block.header;
    ordered_json j;
    j["header"] = {{"version", h.version},
                   {"prior", h.prior.to_hex()},
                   {"difficulty", h.difficulty},
                   {"timestamp", h.timestamp},
                   {"subnonce", h.subnonce},
                   {"tx_root", h.tx_root.to_hex()},
                   {"support", h.support.to_hex()},
                   {"proof_root", h.proof_root.to_hex()},
                   {"bounty_root", h.bounty_root.to_hex()}};
    j["transactions"] = ordered_json::array();
    for (const auto& tx : block.transactions)
        j["transactions"].push_back(tx_json(tx));
    j["proofs"] = ordered_json::array();
    for (const auto& p : block.proofs)
        j["proofs"].push_back(proof_json(p));
    j["bounties"] = ordered_json::array();
    for (const auto& b : block.bounties) {
        ordered_json path = ordered_json::array();
        for (const auto& node : b.path)
            path.push_back(node.to_hex());
        j["bounties"].push_back(
            {{"target_root", b.target_root.to_hex()}, {"tx", tx_json(b.tx)}, {"index", b.index}, {"path", path}});
    }
    j["coinbase"] = ordered_json::array();
    for (const auto& c : block.coinbase)
        j["coinbase"].push_back({{"address", c.address.id.to_hex()}, {"amount", c.amount}});
    j["signature"] = block.signature.value.to_hex();
    return j.dump(indent);
}

} // namespace bobtail::protocol
