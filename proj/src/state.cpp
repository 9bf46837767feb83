#include "ceqss/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ceqss {

namespace {

// Row-major d x d discrete Fourier matrix F[i][j] = w^(ij)/sqrt(d).
// inverse=true gives the conjugate (the change into the Fourier basis).
std::vector<Amplitude> fourier_matrix(int radix, bool inverse) {
    const double sign = inverse ? -1.0 : 1.0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(radix));
    std::vector<Amplitude> mat(static_cast<std::size_t>(radix) * radix);
    for (int i = 0; i < radix; ++i) {
        for (int j = 0; j < radix; ++j) {
            const double angle = sign * 2.0 * std::numbers::pi * i * j / radix;
            mat[static_cast<std::size_t>(i) * radix + j] =
                scale * Amplitude{std::cos(angle), std::sin(angle)};
        }
    }
    return mat;
}

std::uint64_t pow_u64(int base, int exp) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        v *= static_cast<std::uint64_t>(base);
    }
    return v;
}

// Apply a d x d matrix to one site of a dense vector over `sites` sites.
void apply_site_matrix(std::vector<Amplitude>& amp, int radix, int sites, int site,
                       const std::vector<Amplitude>& mat) {
    const std::uint64_t stride = pow_u64(radix, sites - 1 - site);
    const std::uint64_t block = stride * static_cast<std::uint64_t>(radix);
    std::vector<Amplitude> fibre(radix);
    for (std::uint64_t base = 0; base < amp.size(); base += block) {
        for (std::uint64_t lo = 0; lo < stride; ++lo) {
            for (int j = 0; j < radix; ++j) {
                fibre[j] = amp[base + static_cast<std::uint64_t>(j) * stride + lo];
            }
            for (int i = 0; i < radix; ++i) {
                Amplitude acc{0.0, 0.0};
                for (int j = 0; j < radix; ++j) {
                    acc += mat[static_cast<std::size_t>(i) * radix + j] * fibre[j];
                }
                amp[base + static_cast<std::uint64_t>(i) * stride + lo] = acc;
            }
        }
    }
}

// Draw an index from unnormalized weights. Zero-weight cells are never
// selected; the final nonzero cell absorbs floating-point shortfall.
std::size_t sample_from_weights(const std::vector<double>& weights, Rng& rng) {
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    const double target = rng.next_double() * total;
    double acc = 0.0;
    std::size_t last_nonzero = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) {
            acc += weights[i];
            last_nonzero = i;
            if (target < acc) {
                return i;
            }
        }
    }
    if (last_nonzero == weights.size()) {
        throw std::runtime_error("sample_from_weights: all weights zero");
    }
    return last_nonzero;
}

void validate_sites(const PureState& state, const std::vector<std::size_t>& sites) {
    if (sites.empty()) {
        throw std::invalid_argument("measure_sites: site set must be nonempty");
    }
    std::vector<bool> seen(state.sites, false);
    for (std::size_t s : sites) {
        if (s >= static_cast<std::size_t>(state.sites)) {
            throw std::invalid_argument("measure_sites: site out of range");
        }
        if (seen[s]) {
            throw std::invalid_argument("measure_sites: duplicate site");
        }
        seen[s] = true;
    }
}

// Kronecker product of single-site vectors, site order preserved.
std::vector<Amplitude> kron_product(const std::vector<std::vector<Amplitude>>& factors) {
    std::vector<Amplitude> acc{Amplitude{1.0, 0.0}};
    for (const auto& v : factors) {
        std::vector<Amplitude> next(acc.size() * v.size());
        for (std::size_t k = 0; k < acc.size(); ++k) {
            for (std::size_t j = 0; j < v.size(); ++j) {
                next[k * v.size() + j] = acc[k] * v[j];
            }
        }
        acc = std::move(next);
    }
    return acc;
}

} // namespace

std::uint64_t state_dimension(int radix, int sites) {
    if (radix < 2) {
        throw std::invalid_argument("state_dimension: radix must be >= 2");
    }
    if (sites < 1) {
        throw std::invalid_argument("state_dimension: sites must be >= 1");
    }
    std::uint64_t dim = 1;
    for (int i = 0; i < sites; ++i) {
        dim *= static_cast<std::uint64_t>(radix);
        if (dim > kMaxStateDimension) {
            throw std::length_error("state_dimension: radix^sites exceeds the 2^20 cap");
        }
    }
    return dim;
}

double PureState::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitudes) {
        total += std::norm(a);
    }
    return total;
}

void PureState::check_valid() const {
    if (dimension() != state_dimension(radix, sites)) {
        throw std::logic_error("PureState: amplitude count does not match radix^sites");
    }
    for (const auto& a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::logic_error("PureState: non-finite amplitude");
        }
    }
    if (std::abs(norm_squared() - 1.0) > kStateTolerance) {
        throw std::logic_error("PureState: state is not normalized");
    }
}

PureState basis_vector(int digit, Basis basis, int radix) {
    if (radix < 2) {
        throw std::invalid_argument("basis_vector: radix must be >= 2");
    }
    if (digit < 0 || digit >= radix) {
        throw std::invalid_argument("basis_vector: digit out of range");
    }
    PureState state{radix, 1, std::vector<Amplitude>(radix, Amplitude{0.0, 0.0})};
    if (basis == Basis::Computational) {
        state.amplitudes[digit] = Amplitude{1.0, 0.0};
    } else {
        const double scale = 1.0 / std::sqrt(static_cast<double>(radix));
        for (int j = 0; j < radix; ++j) {
            const double angle = 2.0 * std::numbers::pi * digit * j / radix;
            state.amplitudes[j] = scale * Amplitude{std::cos(angle), std::sin(angle)};
        }
    }
    return state;
}

PureState encode_string(const DigitString& values, const DigitString& bases, int radix) {
    if (values.size() != bases.size()) {
        throw std::invalid_argument("encode_string: values and bases lengths differ");
    }
    if (values.radix() != radix) {
        throw std::invalid_argument("encode_string: values radix mismatch");
    }
    if (bases.radix() != 2) {
        throw std::invalid_argument("encode_string: bases must be binary");
    }
    const int m = static_cast<int>(values.size());
    state_dimension(radix, m); // enforce the cap before allocating
    std::vector<std::vector<Amplitude>> factors;
    factors.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Basis b = bases.at(i) == 0 ? Basis::Computational : Basis::Fourier;
        factors.push_back(basis_vector(values.at(i), b, radix).amplitudes);
    }
    return PureState{radix, m, kron_product(factors)};
}

PureState ghz_like(const DigitString& codeword) {
    if (codeword.radix() != 2) {
        throw std::invalid_argument("ghz_like: codeword must be binary");
    }
    const int n = static_cast<int>(codeword.size());
    const std::uint64_t dim = state_dimension(2, n);
    PureState state{2, n, std::vector<Amplitude>(dim, Amplitude{0.0, 0.0})};
    const double amp = 1.0 / std::sqrt(2.0);
    state.amplitudes[codeword.index()] = Amplitude{amp, 0.0};
    state.amplitudes[codeword.negated().index()] = Amplitude{amp, 0.0};
    return state;
}

MeasureResult measure_sites(const PureState& state, const std::vector<std::size_t>& sites,
                            Basis basis, Rng& rng) {
    validate_sites(state, sites);
    const int d = state.radix;
    const int m = state.sites;
    const bool full = sites.size() == static_cast<std::size_t>(m);

    std::vector<std::size_t> sorted(sites);
    std::sort(sorted.begin(), sorted.end());

    std::vector<int> outcome_by_site(m, -1);

    if (full && basis == Basis::Computational) {
        // Whole-register computational measurement: sample the index directly.
        std::vector<double> weights(state.amplitudes.size());
        for (std::size_t i = 0; i < weights.size(); ++i) {
            weights[i] = std::norm(state.amplitudes[i]);
        }
        const std::uint64_t idx = sample_from_weights(weights, rng);
        const DigitString digits = DigitString::from_index(idx, sorted.size(), d);
        PureState collapsed{d, m, std::vector<Amplitude>(state.amplitudes.size(), Amplitude{0.0, 0.0})};
        collapsed.amplitudes[idx] = Amplitude{1.0, 0.0};
        for (int s = 0; s < m; ++s) {
            outcome_by_site[s] = digits.at(s);
        }
        std::vector<std::uint8_t> out(sites.size());
        for (std::size_t k = 0; k < sites.size(); ++k) {
            out[k] = static_cast<std::uint8_t>(outcome_by_site[sites[k]]);
        }
        return MeasureResult{DigitString(std::move(out), d), std::move(collapsed)};
    }

    const auto fourier_inv = basis == Basis::Fourier ? fourier_matrix(d, true)
                                                     : std::vector<Amplitude>{};

    // Measure one site at a time, slicing the measured site away so the
    // working vector shrinks by a factor of d per step.
    std::vector<Amplitude> work = state.amplitudes;
    int work_sites = m;
    std::size_t removed_before = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const std::size_t site = sorted[k];
        const int pos = static_cast<int>(site - removed_before);
        if (basis == Basis::Fourier) {
            apply_site_matrix(work, d, work_sites, pos, fourier_inv);
        }
        const std::uint64_t stride = pow_u64(d, work_sites - 1 - pos);
        const std::uint64_t block = stride * static_cast<std::uint64_t>(d);

        std::vector<double> marginal(d, 0.0);
        for (std::uint64_t base = 0; base < work.size(); base += block) {
            for (int j = 0; j < d; ++j) {
                for (std::uint64_t lo = 0; lo < stride; ++lo) {
                    marginal[j] += std::norm(work[base + static_cast<std::uint64_t>(j) * stride + lo]);
                }
            }
        }
        const int digit = static_cast<int>(sample_from_weights(marginal, rng));
        outcome_by_site[site] = digit;

        std::vector<Amplitude> next(work.size() / d);
        std::uint64_t w = 0;
        for (std::uint64_t base = 0; base < work.size(); base += block) {
            const std::uint64_t from = base + static_cast<std::uint64_t>(digit) * stride;
            for (std::uint64_t lo = 0; lo < stride; ++lo) {
                next[w++] = work[from + lo];
            }
        }
        work = std::move(next);
        --work_sites;
        ++removed_before;
    }

    // `work` now holds the unnormalized conditional state of unmeasured sites.
    double rest_norm = 0.0;
    for (const auto& a : work) {
        rest_norm += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(rest_norm);
    for (auto& a : work) {
        a *= scale;
    }

    // Reassemble the full collapsed state in the original frame: measured
    // sites become deterministic basis vectors, unmeasured sites carry the
    // conditional state.
    PureState collapsed{d, m, {}};
    if (full) {
        std::vector<std::vector<Amplitude>> factors;
        factors.reserve(sorted.size());
        for (int s = 0; s < m; ++s) {
            factors.push_back(basis_vector(outcome_by_site[s], basis, d).amplitudes);
        }
        collapsed.amplitudes = kron_product(factors);
    } else {
        std::vector<std::vector<Amplitude>> site_vec(m);
        for (int s = 0; s < m; ++s) {
            if (outcome_by_site[s] >= 0) {
                site_vec[s] = basis_vector(outcome_by_site[s], basis, d).amplitudes;
            }
        }
        std::vector<std::uint64_t> strides(m);
        for (int s = 0; s < m; ++s) {
            strides[s] = pow_u64(d, m - 1 - s);
        }
        collapsed.amplitudes.assign(state.amplitudes.size(), Amplitude{0.0, 0.0});
        for (std::uint64_t idx = 0; idx < collapsed.amplitudes.size(); ++idx) {
            Amplitude a{1.0, 0.0};
            std::uint64_t rest_idx = 0;
            bool zero = false;
            for (int s = 0; s < m; ++s) {
                const int dig = static_cast<int>((idx / strides[s]) % d);
                if (outcome_by_site[s] >= 0) {
                    a *= site_vec[s][dig];
                    if (a == Amplitude{0.0, 0.0}) {
                        zero = true;
                        break;
                    }
                } else {
                    rest_idx = rest_idx * d + dig;
                }
            }
            if (!zero) {
                collapsed.amplitudes[idx] = a * work[rest_idx];
            }
        }
    }

    std::vector<std::uint8_t> out(sites.size());
    for (std::size_t k = 0; k < sites.size(); ++k) {
        out[k] = static_cast<std::uint8_t>(outcome_by_site[sites[k]]);
    }
    return MeasureResult{DigitString(std::move(out), d), std::move(collapsed)};
}

std::vector<double> outcome_probabilities(const PureState& state,
                                          const std::vector<std::size_t>& sites, Basis basis) {
    validate_sites(state, sites);
    const int d = state.radix;
    const int m = state.sites;

    std::vector<Amplitude> work = state.amplitudes;
    if (basis == Basis::Fourier) {
        const auto inv = fourier_matrix(d, true);
        for (std::size_t s : sites) {
            apply_site_matrix(work, d, m, static_cast<int>(s), inv);
        }
    }

    std::vector<std::uint64_t> strides(sites.size());
    for (std::size_t k = 0; k < sites.size(); ++k) {
        strides[k] = pow_u64(d, m - 1 - static_cast<int>(sites[k]));
    }
    std::vector<double> probs(pow_u64(d, static_cast<int>(sites.size())), 0.0);
    for (std::uint64_t idx = 0; idx < work.size(); ++idx) {
        std::uint64_t key = 0;
        for (std::size_t k = 0; k < sites.size(); ++k) {
            key = key * d + (idx / strides[k]) % d;
        }
        probs[key] += std::norm(work[idx]);
    }
    return probs;
}

Amplitude inner_product(const PureState& a, const PureState& b) {
    if (a.radix != b.radix || a.dimension() != b.dimension()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    Amplitude acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return acc;
}

ProjectiveOutcome projective_check(const PureState& state, const PureState& target, Rng& rng) {
    if (std::abs(target.norm_squared() - 1.0) > kStateTolerance) {
        throw std::invalid_argument("projective_check: target is not normalized");
    }
    const double overlap = std::norm(inner_product(target, state));
    const double p = std::clamp(overlap, 0.0, 1.0);
    return rng.next_double() < p ? ProjectiveOutcome::Pass : ProjectiveOutcome::Fail;
}

} // namespace ceqss
