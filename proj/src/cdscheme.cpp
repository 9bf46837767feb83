#include "ceqss/cdscheme.hpp"

#include <stdexcept>

namespace ceqss {

namespace {

Strategy behavior_of(const std::map<std::size_t, Strategy>& behaviors, std::size_t party) {
    const auto it = behaviors.find(party);
    return it == behaviors.end() ? Strategy::Honest : it->second;
}

} // namespace

CdDeal cd_deal(const DigitString& secret, int length, Rng& rng, BasisPolicy policy) {
    if (secret.radix() != 2) {
        throw std::invalid_argument("cd_deal: secret must be binary");
    }
    const int n = static_cast<int>(secret.size());
    CdDeal deal{n, length, secret, {}, {}};
    deal.shares.reserve(n);
    deal.records.reserve(n);
    for (int i = 0; i < n; ++i) {
        // Independent per-party stream: a party's material depends only on
        // its own secret bit and its own stream.
        Rng party_rng = rng.split();
        CipherKey key = make_cipher_key(static_cast<std::uint64_t>(i), party_rng);
        auto [ct, record] = cd_encrypt(secret.at(i), length, 2, key, party_rng, policy);
        deal.shares.push_back(PartyShare{std::move(ct), key});
        deal.records.push_back(std::move(record));
    }
    return deal;
}

CdReconstruction cd_reconstruct(CdDeal& deal, const std::set<std::size_t>& present, Rng& rng) {
    if (present.empty()) {
        throw std::invalid_argument("cd_reconstruct: quorum must be nonempty");
    }
    for (std::size_t party : present) {
        if (party >= static_cast<std::size_t>(deal.n)) {
            throw std::invalid_argument("cd_reconstruct: unknown party id");
        }
    }
    std::vector<std::uint8_t> guess(deal.n);
    for (std::size_t party = 0; party < static_cast<std::size_t>(deal.n); ++party) {
        if (present.contains(party)) {
            guess[party] = static_cast<std::uint8_t>(
                cd_decrypt(deal.shares[party].ciphertext, deal.shares[party].key, rng));
        } else {
            guess[party] = static_cast<std::uint8_t>(rng.next_digit(2));
        }
    }
    DigitString guess_string(std::move(guess), 2);
    const bool success = guess_string == deal.secret;
    return CdReconstruction{std::move(guess_string), success};
}

RevocationReport cd_revoke(CdDeal& deal, const std::map<std::size_t, Strategy>& behaviors, Rng& rng) {
    RevocationReport report;
    for (std::size_t party = 0; party < static_cast<std::size_t>(deal.n); ++party) {
        const Strategy strategy = behavior_of(behaviors, party);
        const CertResponse response = apply_strategy(strategy, deal.shares[party].ciphertext, rng);
        if (!response.certificate) {
            report.verdicts[party] = CertVerdict::Rejected;  // refusal to respond
            continue;
        }
        report.verdicts[party] = cd_verify(deal.records[party], *response.certificate);
    }
    return report;
}

ThresholdDeal threshold_deal(std::uint32_t secret, int t, int n, std::uint32_t p, int length,
                             Rng& rng, BasisPolicy policy) {
    if (t < 2 || t > n || static_cast<std::uint32_t>(n) >= p) {
        throw std::invalid_argument("threshold_deal: need 1 < t <= n < p");
    }
    std::vector<ShamirShare> plain = shamir_split(secret, t, n, p, rng);
    ThresholdDeal deal{p, t, n, length, secret, std::move(plain), {}, {}};
    deal.shares.reserve(n);
    deal.records.reserve(n);
    for (int i = 0; i < n; ++i) {
        Rng party_rng = rng.split();
        CipherKey key = make_cipher_key(static_cast<std::uint64_t>(i), party_rng);
        auto [ct, record] = cd_encrypt(static_cast<int>(deal.plain_shares[i].value), length,
                                       static_cast<int>(p), key, party_rng, policy);
        deal.shares.push_back(PartyShare{std::move(ct), key});
        deal.records.push_back(std::move(record));
    }
    return deal;
}

ThresholdReconstruction threshold_reconstruct(ThresholdDeal& deal,
                                              const std::set<std::size_t>& present, Rng& rng) {
    if (static_cast<int>(present.size()) < deal.t) {
        throw std::invalid_argument("threshold_reconstruct: fewer than t parties present");
    }
    std::vector<ShamirShare> shares;
    shares.reserve(present.size());
    for (std::size_t party : present) {
        if (party >= deal.shares.size()) {
            throw std::invalid_argument("threshold_reconstruct: unknown party id");
        }
        const int value = cd_decrypt(deal.shares[party].ciphertext, deal.shares[party].key, rng);
        shares.push_back(ShamirShare{static_cast<std::uint32_t>(party + 1),
                                     static_cast<std::uint32_t>(value)});
    }
    const std::uint32_t value = shamir_reconstruct(shares, deal.t, deal.prime);
    return ThresholdReconstruction{value, value == deal.secret};
}

ThresholdRevocation threshold_revoke(ThresholdDeal& deal, const std::set<std::size_t>& responders,
                                     const std::map<std::size_t, Strategy>& behaviors, Rng& rng) {
    if (static_cast<int>(responders.size()) < deal.t) {
        throw std::invalid_argument("threshold_revoke: fewer than t responders");
    }
    ThresholdRevocation result;
    int accepted = 0;
    for (std::size_t party : responders) {
        if (party >= deal.shares.size()) {
            throw std::invalid_argument("threshold_revoke: unknown party id");
        }
        const Strategy strategy = behavior_of(behaviors, party);
        const CertResponse response = apply_strategy(strategy, deal.shares[party].ciphertext, rng);
        const CertVerdict verdict = response.certificate
                                        ? cd_verify(deal.records[party], *response.certificate)
                                        : CertVerdict::Rejected;
        result.report.verdicts[party] = verdict;
        if (verdict == CertVerdict::Accepted) {
            ++accepted;
        }
    }
    result.revoked = accepted >= deal.n - deal.t + 1;
    return result;
}

} // namespace ceqss
