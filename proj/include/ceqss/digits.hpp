// digits.hpp
// Classical digit strings over an alphabet {0..d-1}.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ceqss/rng.hpp"

namespace ceqss {

// A nonempty string of digits with a fixed radix d >= 2. Used for prepared
// codewords, basis-selection strings, measurement outcomes and secrets.
class DigitString {
public:
    DigitString(std::vector<std::uint8_t> digits, int radix);

    // Parse "0011" style text; digits must be decimal characters below the radix.
    static DigitString from_text(const std::string& text, int radix = 2);

    // Uniform random string of the given length.
    static DigitString random(std::size_t length, int radix, Rng& rng);

    std::size_t size() const { return digits_.size(); }
    int radix() const { return radix_; }
    int at(std::size_t i) const { return digits_.at(i); }
    const std::vector<std::uint8_t>& digits() const { return digits_; }

    void set(std::size_t i, int digit);

    // Digit-wise negation x -> x-bar. Binary strings only.
    DigitString negated() const;

    // The string read as a base-d number, most significant digit first.
    // This is the amplitude-vector index convention used throughout.
    std::uint64_t index() const;
    static DigitString from_index(std::uint64_t index, std::size_t length, int radix);

    std::string to_text() const;

    bool operator==(const DigitString&) const = default;

private:
    std::vector<std::uint8_t> digits_;
    int radix_;
};

} // namespace ceqss
