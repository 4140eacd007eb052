#pragma once

#include <bobtail/protocol/uint256.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace bobtail::protocol {

using Bytes = std::vector<std::uint8_t>;

/// 256-bit message digest. Consensus code only depends on this interface.
class Digest {
public:
    virtual ~Digest() = default;
    virtual Uint256 hash(std::span<const std::uint8_t> message) const = 0;
};

/// Fast keyed simulation digest: four independently keyed 64-bit lanes, each
/// absorbing the message in 8-byte words through the SplitMix64 finalizer.
/// Not collision resistant against an adversary; uniform enough for
/// simulation and deterministic across platforms.
class KeyedDigest final : public Digest {
public:
    explicit KeyedDigest(std::uint64_t key = 0x426f627461696cULL);
    Uint256 hash(std::span<const std::uint8_t> message) const override;

private:
    std::uint64_t key_;
};

/// Process-wide KeyedDigest with the default key.
const Digest& default_digest();

/// Payout address: digest of the owner's public identity.
struct Address {
    Uint256 id;

    friend auto operator<=>(const Address&, const Address&) = default;
};

struct KeyPair {
    Uint256 secret;
    Address address;
};

struct Signature {
    Uint256 value;

    friend bool operator==(const Signature&, const Signature&) = default;
};

class Signer {
public:
    virtual ~Signer() = default;
    virtual Signature sign(std::span<const std::uint8_t> message, const KeyPair& key) const = 0;
    virtual bool verify(std::span<const std::uint8_t> message, const Signature& signature,
                        const Address& address) const = 0;
};

/// Stub scheme: sig = digest(message || secret), checked by recomputation
/// against a registry of known keys. Only meaningful inside a simulation
/// where every key was created through `generate`.
class StubSigner final : public Signer {
public:
    explicit StubSigner(const Digest& digest = default_digest());

    /// Deterministic key from a seed, registered for later verification.
    KeyPair generate(std::uint64_t seed);

    Signature sign(std::span<const std::uint8_t> message, const KeyPair& key) const override;
    bool verify(std::span<const std::uint8_t> message, const Signature& signature,
                const Address& address) const override;

private:
    const Digest* digest_;
    std::map<Address, Uint256> secrets_;
};

} // namespace bobtail::protocol
