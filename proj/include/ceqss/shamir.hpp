// shamir.hpp
// (t, n) threshold sharing over a prime field Z_p: the secret is the
// constant term of a random degree-(t-1) polynomial, shares are evaluations
// at nonzero points, reconstruction is Lagrange interpolation at 0.

#pragma once

#include <cstdint>
#include <vector>

#include "ceqss/rng.hpp"

namespace ceqss {

struct ShamirShare {
    std::uint32_t index = 0;  // nonzero evaluation point in Z_p
    std::uint32_t value = 0;  // f(index) in Z_p
};

bool is_prime(std::uint32_t p);

std::vector<ShamirShare> shamir_split(std::uint32_t secret, int t, int n, std::uint32_t p, Rng& rng);

// Interpolates over the given shares (distinct indices, at least t of them).
std::uint32_t shamir_reconstruct(const std::vector<ShamirShare>& shares, int t, std::uint32_t p);

} // namespace ceqss
