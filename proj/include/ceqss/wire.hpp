// wire.hpp
// Byte-level encoding used by the harness trial logs: little-endian scalar
// fields, length-prefixed byte strings, and digit strings packed one digit
// per byte behind a fixed 8-byte {radix, length} header.

#pragma once

#include <cstdint>
#include <vector>

#include "ceqss/digits.hpp"

namespace ceqss {

using Bytes = std::vector<std::uint8_t>;

class ByteWriter {
public:
    void put_u32(std::uint32_t v);
    void put_u64(std::uint64_t v);
    void put_bytes(const Bytes& b);           // u64 length prefix + raw bytes
    void put_digit_string(const DigitString& s);
    const Bytes& data() const { return out_; }
    Bytes take() { return std::move(out_); }

private:
    Bytes out_;
};

class ByteReader {
public:
    explicit ByteReader(const Bytes& data) : data_(data) {}

    std::uint32_t get_u32();
    std::uint64_t get_u64();
    Bytes get_bytes();
    DigitString get_digit_string();
    bool exhausted() const { return pos_ == data_.size(); }

private:
    void need(std::size_t n) const;
    const Bytes& data_;
    std::size_t pos_ = 0;
};

Bytes serialize_digit_string(const DigitString& s);
DigitString parse_digit_string(const Bytes& b);

} // namespace ceqss
