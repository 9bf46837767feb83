// reference.hpp
// Slow, serial, brute-force reference routines used as test oracles.
// Everything here is computed by explicit vector construction and index
// enumeration, independent of the library's optimized measurement paths.

#pragma once

#include <complex>
#include <vector>

#include "ceqss/state.hpp"

namespace ceqss::reference {

std::vector<Amplitude> computational_vec(int digit, int radix);
std::vector<Amplitude> fourier_vec(int digit, int radix);

// Kronecker product, leftmost factor most significant.
std::vector<Amplitude> kron(const std::vector<std::vector<Amplitude>>& factors);

Amplitude inner(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b);

// Marginal outcome distribution for measuring `sites` of `state` in `basis`,
// indexed by the outcome digits (in the order of `sites`) read as a base-d
// number. Brute force: for every outcome and every configuration of the
// unmeasured sites, project onto the explicit product vector.
std::vector<double> measurement_distribution(const PureState& state,
                                             const std::vector<std::size_t>& sites, Basis basis);

} // namespace ceqss::reference
