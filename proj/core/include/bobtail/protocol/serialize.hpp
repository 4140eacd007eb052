#pragma once

#include <bobtail/protocol/types.hpp>

#include <span>
#include <stdexcept>

namespace bobtail::protocol {

class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Wire layout. All integers little-endian, fixed width.
///   u256         32 bytes
///   bytes        u32 length, then the bytes
///   list<T>      u32 count, then each element
///   Transaction  u64 utxo_id, i64 fee, bytes payload
///   NonceBody    u32 version, u64 difficulty, u64 timestamp, u64 nonce, bytes extras
///   ProofSet     u256 prior, u256 merkle_root, u256 address, u256 support, u256 nonce_commitment
///   Header       u32 version, u256 prior, u64 difficulty, u64 timestamp, u64 subnonce,
///                u256 tx_root, u256 support, u256 proof_root, u256 bounty_root
///   Bounty       u256 target_root, Transaction tx, u64 index, list<u256> path
///   Payout       u256 address, i64 amount
///   Block        Header, list<Transaction>, list<ProofSet>, list<Bounty>, list<Payout>,
///                u256 signature
class Writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32(std::uint32_t v) { fixed(v, 4); }
    void u64(std::uint64_t v) { fixed(v, 8); }
    void i64(std::int64_t v) { fixed(static_cast<std::uint64_t>(v), 8); }
    void u256(const Uint256& v);
    void bytes(std::span<const std::uint8_t> v);
    void count(std::size_t n);

    const Bytes& data() const& noexcept { return buf_; }
    Bytes data() && noexcept { return std::move(buf_); }

private:
    void fixed(std::uint64_t v, int width);
    Bytes buf_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8();
    std::uint32_t u32() { return static_cast<std::uint32_t>(fixed(4)); }
    std::uint64_t u64() { return fixed(8); }
    std::int64_t i64() { return static_cast<std::int64_t>(fixed(8)); }
    Uint256 u256();
    Bytes bytes();
    /// List length, checked against the remaining input so corrupt counts
    /// cannot trigger huge allocations.
    std::size_t count(std::size_t min_element_size);

    bool at_end() const noexcept { return pos_ == data_.size(); }
    void expect_end() const;

private:
    std::uint64_t fixed(int width);
    void need(std::size_t n) const;

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

void write(Writer& w, const Transaction& v);
void write(Writer& w, const NonceBody& v);
void write(Writer& w, const ProofSet& v);
void write(Writer& w, const Header& v);
void write(Writer& w, const Bounty& v);
void write(Writer& w, const Payout& v);
void write(Writer& w, const Block& v);

void read(Reader& r, Transaction& v);
void read(Reader& r, NonceBody& v);
void read(Reader& r, ProofSet& v);
void read(Reader& r, Header& v);
void read(Reader& r, Bounty& v);
void read(Reader& r, Payout& v);
void read(Reader& r, Block& v);

template <class T>
Bytes serialize(const T& value)
{
    Writer w;
    write(w, value);
    return std::move(w).data();
}

/// Decodes a complete buffer; trailing bytes are an error.
template <class T>
T deserialize(std::span<const std::uint8_t> data)
{
    Reader r(data);
    T value;
    read(r, value);
    r.expect_end();
    return value;
}

} // namespace bobtail::protocol
