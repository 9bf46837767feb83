#include "ceqss/shamir.hpp"

#include <set>
#include <stdexcept>

namespace ceqss {

namespace {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t result = 1;
    base %= p;
    while (exp > 0) {
        if (exp & 1) {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    return result;
}

// Fermat inverse; p prime, v nonzero mod p.
std::uint64_t mod_inverse(std::uint64_t v, std::uint64_t p) {
    return mod_pow(v, p - 2, p);
}

// t = 1 (a constant polynomial) is allowed here; the threshold scheme layer
// enforces the stricter 1 < t <= n on deals.
void check_params(int t, int n, std::uint32_t p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("shamir: modulus must be prime");
    }
    if (t < 1 || t > n || static_cast<std::uint32_t>(n) >= p) {
        throw std::invalid_argument("shamir: need 1 <= t <= n < p");
    }
}

} // namespace

bool is_prime(std::uint32_t p) {
    if (p < 2) {
        return false;
    }
    for (std::uint64_t f = 2; f * f <= p; ++f) {
        if (p % f == 0) {
            return false;
        }
    }
    return true;
}

std::vector<ShamirShare> shamir_split(std::uint32_t secret, int t, int n, std::uint32_t p, Rng& rng) {
    check_params(t, n, p);
    if (secret >= p) {
        throw std::invalid_argument("shamir_split: secret out of field range");
    }
    std::vector<std::uint64_t> coeffs(t);
    coeffs[0] = secret;
    for (int i = 1; i < t; ++i) {
        coeffs[i] = rng.next_below(p);
    }
    std::vector<ShamirShare> shares;
    shares.reserve(n);
    for (int i = 1; i <= n; ++i) {
        std::uint64_t value = 0;
        for (int c = t - 1; c >= 0; --c) {
            value = (value * static_cast<std::uint64_t>(i) + coeffs[c]) % p;
        }
        shares.push_back(ShamirShare{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(value)});
    }
    return shares;
}

std::uint32_t shamir_reconstruct(const std::vector<ShamirShare>& shares, int t, std::uint32_t p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("shamir_reconstruct: modulus must be prime");
    }
    if (static_cast<int>(shares.size()) < t) {
        throw std::invalid_argument("shamir_reconstruct: fewer than t shares");
    }
    std::set<std::uint32_t> indices;
    for (const auto& s : shares) {
        if (s.index == 0 || s.index >= p || s.value >= p) {
            throw std::invalid_argument("shamir_reconstruct: share out of field range");
        }
        if (!indices.insert(s.index).second) {
            throw std::invalid_argument("shamir_reconstruct: duplicate share index");
        }
    }
    // Lagrange interpolation at 0.
    std::uint64_t secret = 0;
    for (const auto& si : shares) {
        std::uint64_t num = 1;
        std::uint64_t den = 1;
        for (const auto& sj : shares) {
            if (sj.index == si.index) {
                continue;
            }
            num = num * (p - sj.index) % p;
            den = den * ((static_cast<std::uint64_t>(si.index) + p - sj.index) % p) % p;
        }
        const std::uint64_t weight = num * mod_inverse(den, p) % p;
        secret = (secret + static_cast<std::uint64_t>(si.value) * weight) % p;
    }
    return static_cast<std::uint32_t>(secret);
}

} // namespace ceqss
