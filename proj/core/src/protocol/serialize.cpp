#include <bobtail/protocol/serialize.hpp>

#include <limits>

namespace bobtail::protocol {

void Writer::fixed(std::uint64_t v, int width)
{
    for (int b = 0; b < width; ++b)
        buf_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void Writer::u256(const Uint256& v)
{
    const auto b = v.to_bytes();
    buf_.insert(buf_.end(), b.begin(), b.end());
}

void Writer::bytes(std::span<const std::uint8_t> v)
{
    count(v.size());
    buf_.insert(buf_.end(), v.begin(), v.end());
}

void Writer::count(std::size_t n)
{
    if (n > std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("serialize: list too long");
    u32(static_cast<std::uint32_t>(n));
}

void Reader::need(std::size_t n) const
{
    if (data_.size() - pos_ < n)
        throw DecodeError("deserialize: truncated input");
}

std::uint64_t Reader::fixed(int width)
{
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b)
        v |= static_cast<std::uint64_t>(data_[pos_ + static_cast<std::size_t>(b)]) << (8 * b);
    pos_ += static_cast<std::size_t>(width);
    return v;
}

std::uint8_t Reader::u8()
{
    need(1);
    return data_[pos_++];
}

Uint256 Reader::u256()
{
    need(Uint256::kBytes);
    auto v = Uint256::from_bytes(data_.subspan(pos_, Uint256::kBytes));
    pos_ += Uint256::kBytes;
    return v;
}

Bytes Reader::bytes()
{
    const std::size_t n = count(1);
    Bytes out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
              data_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return out;
}

std::size_t Reader::count(std::size_t min_element_size)
{
    const std::size_t n = u32();
    if (min_element_size > 0 && n > (data_.size() - pos_) / min_element_size)
        throw DecodeError("deserialize: list length exceeds input");
    return n;
}

void Reader::expect_end() const
{
    if (!at_end())
        throw DecodeError("deserialize: trailing bytes");
}

namespace {

template <class T>
void write_list(Writer& w, const std::vector<T>& xs)
{
    w.count(xs.size());
    for (const auto& x : xs)
        write(w, x);
}

template <class T>
void read_list(Reader& r, std::vector<T>& xs, std::size_t min_size)
{
    xs.resize(r.count(min_size));
    for (auto& x : xs)
        read(r, x);
}

} // namespace

void write(Writer& w, const Transaction& v)
{
    w.u64(v.utxo_id);
    w.i64(v.fee);
    w.bytes(v.payload);
}

void write(Writer& w, const NonceBody& v)
{
    w.u32(v.version);
    w.u64(v.difficulty);
    w.u64(v.timestamp);
    w.u64(v.nonce);
    w.bytes(v.extras);
}

void write(Writer& w, const ProofSet& v)
{
    w.u256(v.prior);
    w.u256(v.merkle_root);
    w.u256(v.address.id);
    w.u256(v.support);
    w.u256(v.nonce_commitment);
}

void write(Writer& w, const Header& v)
{
    w.u32(v.version);
    w.u256(v.prior);
    w.u64(v.difficulty);
    w.u64(v.timestamp);
    w.u64(v.subnonce);
    w.u256(v.tx_root);
    w.u256(v.support);
    w.u256(v.proof_root);
    w.u256(v.bounty_root);
}

void write(Writer& w, const Bounty& v)
{
    w.u256(v.target_root);
    write(w, v.tx);
    w.u64(v.index);
    w.count(v.path.size());
    for (const auto& node : v.path)
        w.u256(node);
}

void write(Writer& w, const Payout& v)
{
    w.u256(v.address.id);
    w.i64(v.amount);
}

void write(Writer& w, const Block& v)
{
    write(w, v.header);
    write_list(w, v.transactions);
    write_list(w, v.proofs);
    write_list(w, v.bounties);
    write_list(w, v.coinbase);
    w.u256(v.signature.value);
}

void read(Reader& r, Transaction& v)
{
    v.utxo_id = r.u64();
    v.fee = r.i64();
    v.payload = r.bytes();
}

void read(Reader& r, NonceBody& v)
{
    v.version = r.u32();
    v.difficulty = r.u64();
    v.timestamp = r.u64();
    v.nonce = r.u64();
    v.extras = r.bytes();
}

void read(Reader& r, ProofSet& v)
{
    v.prior = r.u256();
    v.merkle_root = r.u256();
    v.address.id = r.u256();
    v.support = r.u256();
    v.nonce_commitment = r.u256();
}

void read(Reader& r, Header& v)
{
    v.version = r.u32();
    v.prior = r.u256();
    v.difficulty = r.u64();
    v.timestamp = r.u64();
    v.subnonce = r.u64();
    v.tx_root = r.u256();
    v.support = r.u256();
    v.proof_root = r.u256();
    v.bounty_root = r.u256();
}

void read(Reader& r, Bounty& v)
{
    v.target_root = r.u256();
    read(r, v.tx);
    v.index = r.u64();
    v.path.resize(r.count(Uint256::kBytes));
    for (auto& node : v.path)
        node = r.u256();
}

void read(Reader& r, Payout& v)
{
    v.address.id = r.u256();
    v.amount = r.i64();
}

void read(Reader& r, Block& v)
{
    read(r, v.header);
    read_list(r, v.transactions, 20);
    read_list(r, v.proofs, 5 * Uint256::kBytes);
    read_list(r, v.bounties, Uint256::kBytes + 32);
    read_list(r, v.coinbase, Uint256::kBytes + 8);
    v.signature.value = r.u256();
}

} // namespace bobtail::protocol
