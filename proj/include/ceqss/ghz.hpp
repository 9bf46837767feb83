// ghz.hpp
// Construction 1: the dealer shares an n-qubit entangled state
// (|x> + |x-bar>)/sqrt(2), one qubit per party. Reconstruction measures
// computationally; the seal check projects the returned register onto the
// dealt superposition. Unconditional, at the optimal seal bound.

#pragma once

#include <set>
#include <vector>

#include "ceqss/digits.hpp"
#include "ceqss/rng.hpp"
#include "ceqss/state.hpp"

namespace ceqss {

// An (n-1)-bit secret; the nth codeword bit is spent on the x / x-bar
// degeneracy, so only half the n-bit space codes messages.
struct Secret {
    DigitString bits;
};

enum class SealVerdict { Honest, CheatDetected };
// Deliberately carries no party identity: a failed seal measurement reveals
// that someone measured, never who.

// Live dealer record for one dealt secret. Single-owner session object;
// reconstruction and the seal check each consume it, an early cheating
// measurement does not (the collapsed particles stay returnable).
struct GhzDeal {
    int n = 0;
    DigitString codeword;          // x
    PureState joint;               // the live n-qubit state
    std::vector<std::size_t> custody;  // party id -> site index (bijection)
    bool consumed = false;
};

// 0||s, or its bit-wise negation 1||s-bar when the coin is 1. Both decode to s.
DigitString encode_secret(const Secret& secret, int coin);

// Canonical representative has leading bit 0: flip all bits if needed, drop
// the leading bit.
Secret decode_codeword(const DigitString& codeword);

GhzDeal deal(const Secret& secret, Rng& rng);

struct Reconstruction {
    Secret guess;
    bool success = false;
};

// Present parties measure their qubits computationally; the k missing bits
// are guessed uniformly. Succeeds with probability 1/2^k. Consumes the deal.
Reconstruction reconstruct(GhzDeal& deal, const std::set<std::size_t>& present, Rng& rng);

// Dishonest parties measure their own qubits computationally before the
// unseal event, collapsing the joint state to |x> or |x-bar>. Returns the
// bits they observe. The deal stays returnable.
DigitString cheat_measure_early(GhzDeal& deal, const std::set<std::size_t>& cheaters, Rng& rng);

// All particles come back; the dealer measures in the two-outcome basis
// {|x>+|x-bar>, everything orthogonal}. Consumes the deal.
SealVerdict seal_check(GhzDeal& deal, Rng& rng);

} // namespace ceqss
