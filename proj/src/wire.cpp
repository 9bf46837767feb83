#include "ceqss/wire.hpp"

#include <stdexcept>

namespace ceqss {

void ByteWriter::put_u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

void ByteWriter::put_u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

void ByteWriter::put_bytes(const Bytes& b) {
    put_u64(b.size());
    out_.insert(out_.end(), b.begin(), b.end());
}

void ByteWriter::put_digit_string(const DigitString& s) {
    put_u32(static_cast<std::uint32_t>(s.radix()));
    put_u32(static_cast<std::uint32_t>(s.size()));
    out_.insert(out_.end(), s.digits().begin(), s.digits().end());
}

void ByteReader::need(std::size_t n) const {
    if (pos_ + n > data_.size()) {
        throw std::runtime_error("ByteReader: truncated input");
    }
}

std::uint32_t ByteReader::get_u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
    }
    return v;
}

std::uint64_t ByteReader::get_u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
    }
    return v;
}

Bytes ByteReader::get_bytes() {
    const std::uint64_t len = get_u64();
    need(len);
    Bytes out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
              data_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
    pos_ += len;
    return out;
}

DigitString ByteReader::get_digit_string() {
    const std::uint32_t radix = get_u32();
    const std::uint32_t len = get_u32();
    need(len);
    std::vector<std::uint8_t> digits(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                     data_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
    pos_ += len;
    return DigitString(std::move(digits), static_cast<int>(radix));
}

Bytes serialize_digit_string(const DigitString& s) {
    ByteWriter w;
    w.put_digit_string(s);
    return w.take();
}

DigitString parse_digit_string(const Bytes& b) {
    ByteReader r(b);
    DigitString s = r.get_digit_string();
    if (!r.exhausted()) {
        throw std::runtime_error("parse_digit_string: trailing bytes");
    }
    return s;
}

} // namespace ceqss
