// state.hpp
// Exact pure-state simulation for small registers of qubits/qudits:
// state construction, basis changes, Born-rule measurement of site subsets,
// and two-outcome projective measurement.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ceqss/digits.hpp"
#include "ceqss/rng.hpp"

namespace ceqss {

using Amplitude = std::complex<double>;

// Hard cap on the dense amplitude vector: d^m <= 2^20.
inline constexpr std::uint64_t kMaxStateDimension = 1ull << 20;

// Norm / unitarity tolerance for double-precision states.
inline constexpr double kStateTolerance = 1e-9;

// The two encoding bases of the protocols. Fourier at d=2 is the Hadamard basis.
enum class Basis { Computational, Fourier };

// Dense amplitude vector over m sites of radix d; length d^m, unit norm.
// Site 0 is the leftmost digit of an outcome string and the most significant
// digit of an amplitude index. Values are immutable in normal protocol flow;
// operations return new states.
struct PureState {
    int radix = 2;
    int sites = 1;
    std::vector<Amplitude> amplitudes;

    std::uint64_t dimension() const { return amplitudes.size(); }

    double norm_squared() const;

    // Throws if the invariants (dimension = d^m, unit norm, finite entries) fail.
    void check_valid() const;
};

// d^m with the 2^20 cap enforced.
std::uint64_t state_dimension(int radix, int sites);

// Single-site basis vector. Computational: the standard unit vector e_i.
// Fourier: (1/sqrt(d)) * sum_j w^(ij) |j>, w = exp(2*pi*i/d).
PureState basis_vector(int digit, Basis basis, int radix);

// Product state encoding one digit per site, basis chosen per site by the
// binary string `bases` (0 -> computational, 1 -> Fourier).
PureState encode_string(const DigitString& values, const DigitString& bases, int radix);

// The n-qubit superposition (|x> + |x-bar>)/sqrt(2) for a binary codeword x.
PureState ghz_like(const DigitString& codeword);

struct MeasureResult {
    DigitString outcome;  // outcome[k] is the digit observed at sites[k]
    PureState collapsed;  // renormalized post-measurement state, original frame
};

// Born-rule measurement of the listed sites (distinct, in range). For the
// Fourier basis the basis change is applied to the measured sites only.
// Measuring every site leaves a deterministic product state behind.
MeasureResult measure_sites(const PureState& state, const std::vector<std::size_t>& sites,
                            Basis basis, Rng& rng);

// Marginal outcome distribution of measuring `sites` in `basis`, indexed by
// the outcome digits read as a base-d number. Computed by a direct basis
// change + scatter, independent of the sampling path in measure_sites.
std::vector<double> outcome_probabilities(const PureState& state,
                                          const std::vector<std::size_t>& sites, Basis basis);

// <a|b> with conjugation on the first argument.
Amplitude inner_product(const PureState& a, const PureState& b);

enum class ProjectiveOutcome { Pass, Fail };

// Two-outcome projective measurement {|target><target|, 1 - |target><target|}.
// Pass with probability |<target|state>|^2 (clamped to [0,1]); Fail absorbs
// everything orthogonal to the target, in span or not.
ProjectiveOutcome projective_check(const PureState& state, const PureState& target, Rng& rng);

} // namespace ceqss
