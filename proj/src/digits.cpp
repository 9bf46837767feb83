#include "ceqss/digits.hpp"

#include <stdexcept>

namespace ceqss {

DigitString::DigitString(std::vector<std::uint8_t> digits, int radix)
    : digits_(std::move(digits)), radix_(radix) {
    if (radix_ < 2) {
        throw std::invalid_argument("DigitString: radix must be >= 2");
    }
    if (digits_.empty()) {
        throw std::invalid_argument("DigitString: length must be >= 1");
    }
    for (auto d : digits_) {
        if (d >= radix_) {
            throw std::invalid_argument("DigitString: digit out of range for radix");
        }
    }
}

DigitString DigitString::from_text(const std::string& text, int radix) {
    std::vector<std::uint8_t> digits;
    digits.reserve(text.size());
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("DigitString: non-digit character");
        }
        digits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return DigitString(std::move(digits), radix);
}

DigitString DigitString::random(std::size_t length, int radix, Rng& rng) {
    std::vector<std::uint8_t> digits(length);
    for (auto& d : digits) {
        d = static_cast<std::uint8_t>(rng.next_digit(radix));
    }
    return DigitString(std::move(digits), radix);
}

void DigitString::set(std::size_t i, int digit) {
    if (digit < 0 || digit >= radix_) {
        throw std::invalid_argument("DigitString::set: digit out of range");
    }
    digits_.at(i) = static_cast<std::uint8_t>(digit);
}

DigitString DigitString::negated() const {
    if (radix_ != 2) {
        throw std::invalid_argument("DigitString::negated: defined for binary strings only");
    }
    std::vector<std::uint8_t> flipped(digits_.size());
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        flipped[i] = static_cast<std::uint8_t>(1 - digits_[i]);
    }
    return DigitString(std::move(flipped), 2);
}

std::uint64_t DigitString::index() const {
    std::uint64_t idx = 0;
    for (auto d : digits_) {
        idx = idx * static_cast<std::uint64_t>(radix_) + d;
    }
    return idx;
}

DigitString DigitString::from_index(std::uint64_t index, std::size_t length, int radix) {
    std::vector<std::uint8_t> digits(length);
    for (std::size_t i = 0; i < length; ++i) {
        digits[length - 1 - i] = static_cast<std::uint8_t>(index % radix);
        index /= radix;
    }
    if (index != 0) {
        throw std::invalid_argument("DigitString::from_index: index does not fit in length");
    }
    return DigitString(std::move(digits), radix);
}

std::string DigitString::to_text() const {
    std::string out;
    out.reserve(digits_.size());
    for (auto d : digits_) {
        out.push_back(static_cast<char>('0' + d));
    }
    return out;
}

} // namespace ceqss
