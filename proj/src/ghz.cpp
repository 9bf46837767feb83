#include "ceqss/ghz.hpp"

#include <numeric>
#include <stdexcept>

namespace ceqss {

DigitString encode_secret(const Secret& secret, int coin) {
    if (secret.bits.radix() != 2) {
        throw std::invalid_argument("encode_secret: secret must be binary");
    }
    if (coin != 0 && coin != 1) {
        throw std::invalid_argument("encode_secret: coin must be 0 or 1");
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(secret.bits.size() + 1);
    bits.push_back(0);
    bits.insert(bits.end(), secret.bits.digits().begin(), secret.bits.digits().end());
    DigitString codeword(std::move(bits), 2);
    return coin == 0 ? codeword : codeword.negated();
}

Secret decode_codeword(const DigitString& codeword) {
    if (codeword.radix() != 2) {
        throw std::invalid_argument("decode_codeword: codeword must be binary");
    }
    if (codeword.size() < 2) {
        throw std::invalid_argument("decode_codeword: codeword too short");
    }
    const DigitString canonical = codeword.at(0) == 1 ? codeword.negated() : codeword;
    std::vector<std::uint8_t> bits(canonical.digits().begin() + 1, canonical.digits().end());
    return Secret{DigitString(std::move(bits), 2)};
}

GhzDeal deal(const Secret& secret, Rng& rng) {
    const int n = static_cast<int>(secret.bits.size()) + 1;
    if (n < 2 || n > 20) {
        throw std::invalid_argument("deal: party count must be in [2, 20]");
    }
    const DigitString codeword = encode_secret(secret, rng.next_digit(2));
    GhzDeal d{n, codeword, ghz_like(codeword), {}, false};
    d.custody.resize(n);
    std::iota(d.custody.begin(), d.custody.end(), std::size_t{0});
    return d;
}

Reconstruction reconstruct(GhzDeal& deal, const std::set<std::size_t>& present, Rng& rng) {
    if (present.empty()) {
        throw std::invalid_argument("reconstruct: quorum must be nonempty");
    }
    if (deal.consumed) {
        throw std::logic_error("reconstruct: deal already consumed");
    }
    std::vector<std::size_t> sites;
    sites.reserve(present.size());
    for (std::size_t party : present) {
        if (party >= static_cast<std::size_t>(deal.n)) {
            throw std::invalid_argument("reconstruct: unknown party id");
        }
        sites.push_back(deal.custody[party]);
    }

    auto measured = measure_sites(deal.joint, sites, Basis::Computational, rng);
    deal.joint = std::move(measured.collapsed);
    deal.consumed = true;

    // Assemble the full codeword guess: observed bits where present, fair
    // coins where missing.
    std::vector<std::uint8_t> guess_bits(deal.n);
    std::size_t k = 0;
    for (std::size_t party : present) {
        guess_bits[party] = static_cast<std::uint8_t>(measured.outcome.at(k++));
    }
    for (int party = 0; party < deal.n; ++party) {
        if (!present.contains(static_cast<std::size_t>(party))) {
            guess_bits[party] = static_cast<std::uint8_t>(rng.next_digit(2));
        }
    }
    Secret guess = decode_codeword(DigitString(std::move(guess_bits), 2));
    const bool success = guess.bits == decode_codeword(deal.codeword).bits;
    return Reconstruction{std::move(guess), success};
}

DigitString cheat_measure_early(GhzDeal& deal, const std::set<std::size_t>& cheaters, Rng& rng) {
    if (cheaters.empty()) {
        throw std::invalid_argument("cheat_measure_early: cheater set must be nonempty");
    }
    if (deal.consumed) {
        throw std::logic_error("cheat_measure_early: deal already consumed");
    }
    std::vector<std::size_t> sites;
    sites.reserve(cheaters.size());
    for (std::size_t party : cheaters) {
        if (party >= static_cast<std::size_t>(deal.n)) {
            throw std::invalid_argument("cheat_measure_early: unknown party id");
        }
        sites.push_back(deal.custody[party]);
    }
    auto measured = measure_sites(deal.joint, sites, Basis::Computational, rng);
    deal.joint = std::move(measured.collapsed);
    return std::move(measured.outcome);
}

SealVerdict seal_check(GhzDeal& deal, Rng& rng) {
    if (deal.consumed) {
        throw std::logic_error("seal_check: deal already consumed");
    }
    const PureState target = ghz_like(deal.codeword);
    const auto outcome = projective_check(deal.joint, target, rng);
    deal.consumed = true;
    return outcome == ProjectiveOutcome::Pass ? SealVerdict::Honest : SealVerdict::CheatDetected;
}

} // namespace ceqss
