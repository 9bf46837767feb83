// cdscheme.hpp
// Construction 2: party i holds a certified-deletion encryption of secret
// bit b_i, giving per-party traceable revocation; plus the (t, n) revocable
// threshold variant that wraps Shamir shares in qudit ciphertexts.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "ceqss/adversary.hpp"
#include "ceqss/cdpke.hpp"
#include "ceqss/digits.hpp"
#include "ceqss/rng.hpp"
#include "ceqss/shamir.hpp"

namespace ceqss {

// The party-held and dealer-held halves of one share.
struct PartyShare {
    CDCiphertext ciphertext;
    CipherKey key;
};

struct CdDeal {
    int n = 0;
    int length = 0;  // m
    DigitString secret;                // b_1 ... b_n, radix 2
    std::vector<PartyShare> shares;    // held by the parties
    std::vector<CDRecord> records;     // held by the dealer
};

struct RevocationReport {
    std::map<std::size_t, CertVerdict> verdicts;  // one verdict per party asked
};

CdDeal cd_deal(const DigitString& secret, int length, Rng& rng,
               BasisPolicy policy = BasisPolicy::FixedHalf);

struct CdReconstruction {
    DigitString guess;
    bool success = false;
};

// Present parties decrypt their bits; missing bits are guessed uniformly.
CdReconstruction cd_reconstruct(CdDeal& deal, const std::set<std::size_t>& present, Rng& rng);

// The dealer asks every party for a deletion certificate and verifies each
// against his records. Honest parties are always accepted; a party who
// decrypted first escapes only with probability d^-w (w = Fourier positions).
RevocationReport cd_revoke(CdDeal& deal, const std::map<std::size_t, Strategy>& behaviors, Rng& rng);

struct ThresholdDeal {
    std::uint32_t prime = 0;  // field modulus and qudit dimension
    int t = 0;
    int n = 0;
    int length = 0;  // m
    std::uint32_t secret = 0;
    std::vector<ShamirShare> plain_shares;  // dealer bookkeeping
    std::vector<PartyShare> shares;
    std::vector<CDRecord> records;
};

ThresholdDeal threshold_deal(std::uint32_t secret, int t, int n, std::uint32_t p, int length,
                             Rng& rng, BasisPolicy policy = BasisPolicy::FixedHalf);

struct ThresholdReconstruction {
    std::uint32_t value = 0;
    bool success = false;
};

// Any t or more present parties decrypt their wrapped shares and interpolate.
ThresholdReconstruction threshold_reconstruct(ThresholdDeal& deal,
                                              const std::set<std::size_t>& present, Rng& rng);

struct ThresholdRevocation {
    RevocationReport report;
    // The dealer concludes the secret is revoked once at least n-t+1 shares
    // verified as deleted: fewer than t intact shares remain.
    bool revoked = false;
};

// At least t responders must answer (the dealer cannot conclude anything
// from fewer).
ThresholdRevocation threshold_revoke(ThresholdDeal& deal, const std::set<std::size_t>& responders,
                                     const std::map<std::size_t, Strategy>& behaviors, Rng& rng);

} // namespace ceqss
