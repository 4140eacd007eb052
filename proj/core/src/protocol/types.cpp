#include <bobtail/protocol/types.hpp>

#include <bobtail/protocol/serialize.hpp>

namespace bobtail::protocol {

Uint256 proof_value(const ProofSet& proof, const Digest& digest)
{
    return digest.hash(serialize(proof));
}

Uint256 nonce_commitment(const NonceBody& body, const Digest& digest)
{
    return digest.hash(serialize(body));
}

Uint256 transaction_hash(const Transaction& tx, const Digest& digest)
{
    return digest.hash(serialize(tx));
}

} // namespace bobtail::protocol
