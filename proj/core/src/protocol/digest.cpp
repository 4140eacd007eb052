#include <bobtail/protocol/digest.hpp>

#include <bobtail/common/rng.hpp>

namespace bobtail::protocol {

namespace {

constexpr std::uint64_t kLaneKeys[4] = {0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL,
                                        0xa4093822299f31d0ULL, 0x082efa98ec4e6c89ULL};
constexpr std::uint64_t kPrime = 0x9fb21c651e98df25ULL;

Bytes concat(std::span<const std::uint8_t> message, const Uint256& secret)
{
    Bytes buf(message.begin(), message.end());
    const auto tail = secret.to_bytes();
    buf.insert(buf.end(), tail.begin(), tail.end());
    return buf;
}

} // namespace

KeyedDigest::KeyedDigest(std::uint64_t key) : key_(key) {}

Uint256 KeyedDigest::hash(std::span<const std::uint8_t> message) const
{
    Uint256 out;
    for (std::size_t lane = 0; lane < 4; ++lane) {
        std::uint64_t h = mix64(key_ ^ kLaneKeys[lane]) ^ (message.size() * kPrime);
        std::size_t i = 0;
        for (; i + 8 <= message.size(); i += 8) {
            std::uint64_t w = 0;
            for (std::size_t b = 0; b < 8; ++b)
                w |= static_cast<std::uint64_t>(message[i + b]) << (8 * b);
            h = mix64(h ^ w) * kPrime + kLaneKeys[lane];
        }
        std::uint64_t w = 0x80;
        for (std::size_t b = 0; i + b < message.size(); ++b)
            w |= static_cast<std::uint64_t>(message[i + b]) << (8 * b + 8);
        h = mix64(h ^ w);
        out.set_limb(lane, mix64(h + kLaneKeys[(lane + 1) % 4]));
    }
    return out;
}

const Digest& default_digest()
{
    static const KeyedDigest digest;
    return digest;
}

StubSigner::StubSigner(const Digest& digest) : digest_(&digest) {}

KeyPair StubSigner::generate(std::uint64_t seed)
{
    Uint256 secret;
    for (std::size_t i = 0; i < 4; ++i)
        secret.set_limb(i, mix64(seed * 4 + i + 0x5eed));
    const auto bytes = secret.to_bytes();
    const Address address{digest_->hash(bytes)};
    secrets_[address] = secret;
    return {secret, address};
}

Signature StubSigner::sign(std::span<const std::uint8_t> message, const KeyPair& key) const
{
    return {digest_->hash(concat(message, key.secret))};
}

bool StubSigner::verify(std::span<const std::uint8_t> message, const Signature& signature,
                        const Address& address) const
{
    const auto it = secrets_.find(address);
    if (it == secrets_.end())
        return false;
    return digest_->hash(concat(message, it->second)) == signature.value;
}

} // namespace bobtail::protocol
