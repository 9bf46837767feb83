#include "reference.hpp"

#include <cmath>
#include <numbers>

namespace ceqss::reference {

std::vector<Amplitude> computational_vec(int digit, int radix) {
    std::vector<Amplitude> v(radix, Amplitude{0.0, 0.0});
    v[digit] = Amplitude{1.0, 0.0};
    return v;
}

std::vector<Amplitude> fourier_vec(int digit, int radix) {
    std::vector<Amplitude> v(radix);
    for (int j = 0; j < radix; ++j) {
        v[j] = std::polar(1.0 / std::sqrt(static_cast<double>(radix)),
                          2.0 * std::numbers::pi * digit * j / radix);
    }
    return v;
}

std::vector<Amplitude> kron(const std::vector<std::vector<Amplitude>>& factors) {
    std::vector<Amplitude> acc{Amplitude{1.0, 0.0}};
    for (const auto& f : factors) {
        std::vector<Amplitude> next(acc.size() * f.size());
        for (std::size_t i = 0; i < acc.size(); ++i) {
            for (std::size_t j = 0; j < f.size(); ++j) {
                next[i * f.size() + j] = acc[i] * f[j];
            }
        }
        acc = std::move(next);
    }
    return acc;
}

Amplitude inner(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b) {
    Amplitude acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

std::vector<double> measurement_distribution(const PureState& state,
                                             const std::vector<std::size_t>& sites, Basis basis) {
    const int d = state.radix;
    const int m = state.sites;
    const auto k = sites.size();

    std::uint64_t outcomes = 1;
    for (std::size_t i = 0; i < k; ++i) {
        outcomes *= static_cast<std::uint64_t>(d);
    }
    std::uint64_t rest = state.dimension() / outcomes;

    std::vector<double> probs(outcomes, 0.0);
    for (std::uint64_t o = 0; o < outcomes; ++o) {
        // digits of this outcome, one per measured site
        std::vector<int> outcome_digit(m, -1);
        std::uint64_t tmp = o;
        for (std::size_t i = k; i-- > 0;) {
            outcome_digit[sites[i]] = static_cast<int>(tmp % d);
            tmp /= d;
        }
        for (std::uint64_t r = 0; r < rest; ++r) {
            std::vector<std::vector<Amplitude>> factors;
            factors.reserve(m);
            std::uint64_t rr = r;
            std::vector<int> rest_digit(m, -1);
            for (int s = m - 1; s >= 0; --s) {
                if (outcome_digit[s] < 0) {
                    rest_digit[s] = static_cast<int>(rr % d);
                    rr /= d;
                }
            }
            for (int s = 0; s < m; ++s) {
                if (outcome_digit[s] >= 0) {
                    factors.push_back(basis == Basis::Fourier ? fourier_vec(outcome_digit[s], d)
                                                              : computational_vec(outcome_digit[s], d));
                } else {
                    factors.push_back(computational_vec(rest_digit[s], d));
                }
            }
            const Amplitude overlap = inner(kron(factors), state.amplitudes);
            probs[o] += std::norm(overlap);
        }
    }
    return probs;
}

} // namespace ceqss::reference
