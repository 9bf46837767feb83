// rng.hpp
// Splittable deterministic pseudo-random generator (splitmix64 core).

#pragma once

#include <cstdint>
#include <stdexcept>

namespace ceqss {

// Identical seeds produce identical sequences on every platform. Child
// streams made by split()/derive() are decorrelated from the parent and
// from each other, which is what lets Monte Carlo trials run in any order
// (or in parallel) without changing results.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // Uniform in [0,1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound). Rejection sampling, bias-free.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) {
            throw std::invalid_argument("Rng::next_below: bound must be positive");
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    int next_digit(int radix) { return static_cast<int>(next_below(static_cast<std::uint64_t>(radix))); }

    bool next_bit() { return (next_u64() >> 63) != 0; }

    // A fresh generator whose stream is independent of further draws from this one.
    Rng split() { return Rng(mix(next_u64() ^ 0x6a09e667f3bcc909ull)); }

    // Deterministic child stream, e.g. per-trial generators derived from a
    // master seed. Distinct stream ids give distinct seeds.
    static Rng derive(std::uint64_t master, std::uint64_t stream) {
        return Rng(mix(master + 0x9e3779b97f4a7c15ull * (stream + 1)));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace ceqss
