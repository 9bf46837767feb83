#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "ceqss/state.hpp"
#include "reference.hpp"

using namespace ceqss;

namespace {

constexpr double kTol = 1e-9;

bool close(const Amplitude& a, const Amplitude& b, double tol = kTol) {
    return std::abs(a - b) <= tol;
}

PureState random_state(int radix, int sites, Rng& rng) {
    PureState state{radix, sites, {}};
    state.amplitudes.resize(state_dimension(radix, sites));
    double norm = 0.0;
    for (auto& a : state.amplitudes) {
        a = Amplitude{rng.next_double() - 0.5, rng.next_double() - 0.5};
        norm += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& a : state.amplitudes) {
        a *= scale;
    }
    return state;
}

std::vector<std::size_t> all_sites(int m) {
    std::vector<std::size_t> sites(m);
    for (int i = 0; i < m; ++i) {
        sites[i] = static_cast<std::size_t>(i);
    }
    return sites;
}

} // namespace

TEST_CASE("rng determinism and stream derivation") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    std::set<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        seeds.insert(Rng::derive(7, i).next_u64());
    }
    CHECK(seeds.size() == 100000);
    CHECK_THROWS_AS(a.next_below(0), std::invalid_argument);
}

TEST_CASE("digit strings") {
    const DigitString x = DigitString::from_text("0011100101");
    CHECK(x.index() == 229);
    CHECK(x.negated().index() == 794);
    CHECK(x.negated().to_text() == "1100011010");
    CHECK(DigitString::from_index(229, 10, 2) == x);
    CHECK_THROWS_AS(DigitString::from_text("012", 2), std::invalid_argument);
    CHECK_THROWS_AS(DigitString(std::vector<std::uint8_t>{}, 2), std::invalid_argument);
    CHECK_THROWS_AS(DigitString::from_text("012", 3).negated(), std::invalid_argument);
}

TEST_CASE("basis vectors match the stated amplitudes") {
    const PureState e0 = basis_vector(0, Basis::Computational, 2);
    CHECK(close(e0.amplitudes[0], {1.0, 0.0}));
    CHECK(close(e0.amplitudes[1], {0.0, 0.0}));

    const PureState minus = basis_vector(1, Basis::Fourier, 2);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(close(minus.amplitudes[0], {s, 0.0}));
    CHECK(close(minus.amplitudes[1], {-s, 0.0}));

    // |1-hat> at d=6: (1/sqrt 6) [1, w, w^2, ..., w^5], w = exp(i*pi/3)
    const PureState hat1 = basis_vector(1, Basis::Fourier, 6);
    for (int j = 0; j < 6; ++j) {
        const Amplitude expect = std::polar(1.0 / std::sqrt(6.0), std::numbers::pi * j / 3.0);
        CHECK(close(hat1.amplitudes[j], expect));
    }

    CHECK_THROWS_AS(basis_vector(2, Basis::Computational, 2), std::invalid_argument);
    CHECK_THROWS_AS(basis_vector(-1, Basis::Fourier, 3), std::invalid_argument);
}

TEST_CASE("encode_string builds the site-ordered tensor product") {
    const PureState s01 = encode_string(DigitString::from_text("01"), DigitString::from_text("00"), 2);
    CHECK(close(s01.amplitudes[1], {1.0, 0.0}));
    CHECK(s01.dimension() == 4);

    const PureState plus = encode_string(DigitString::from_text("0"), DigitString::from_text("1"), 2);
    CHECK(close(plus.amplitudes[0], {1.0 / std::sqrt(2.0), 0.0}));
    CHECK(close(plus.amplitudes[1], {1.0 / std::sqrt(2.0), 0.0}));

    // |1> (x) |0-hat| against an explicitly built product
    const PureState mixed = encode_string(DigitString::from_text("10"), DigitString::from_text("01"), 2);
    const auto expect = reference::kron({reference::computational_vec(1, 2), reference::fourier_vec(0, 2)});
    REQUIRE(mixed.dimension() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        CHECK(close(mixed.amplitudes[i], expect[i]));
    }

    CHECK_THROWS_AS(encode_string(DigitString::from_text("10"), DigitString::from_text("0"), 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(encode_string(DigitString::from_text("012", 3), DigitString::from_text("000"), 2),
                    std::invalid_argument);
}

TEST_CASE("ghz_like places 1/sqrt(2) on the codeword pair") {
    const DigitString x = DigitString::from_text("0011100101");
    const PureState g = ghz_like(x);
    const double s = 1.0 / std::sqrt(2.0);
    int nonzero = 0;
    for (std::uint64_t i = 0; i < g.dimension(); ++i) {
        if (std::abs(g.amplitudes[i]) > 0.0) {
            ++nonzero;
            CHECK((i == 229 || i == 794));
            CHECK(close(g.amplitudes[i], {s, 0.0}));
        }
    }
    CHECK(nonzero == 2);
    g.check_valid();

    const PureState single = ghz_like(DigitString::from_text("0"));
    CHECK(close(single.amplitudes[0], {s, 0.0}));
    CHECK(close(single.amplitudes[1], {s, 0.0}));

    const PureState bell = ghz_like(DigitString::from_text("01"));
    CHECK(close(bell.amplitudes[0b01], {s, 0.0}));
    CHECK(close(bell.amplitudes[0b10], {s, 0.0}));

    std::vector<std::uint8_t> big(21, 0);
    CHECK_THROWS_AS(ghz_like(DigitString(big, 2)), std::length_error);
}

TEST_CASE("measurement of eigenstates is deterministic") {
    Rng rng(3);
    const PureState one = encode_string(DigitString::from_text("1"), DigitString::from_text("0"), 2);
    for (int i = 0; i < 50; ++i) {
        const auto r = measure_sites(one, {0}, Basis::Computational, rng);
        CHECK(r.outcome.at(0) == 1);
    }
    // Fourier eigenstate measured in the Fourier basis
    const PureState hat2 = basis_vector(2, Basis::Fourier, 5);
    for (int i = 0; i < 50; ++i) {
        const auto r = measure_sites(hat2, {0}, Basis::Fourier, rng);
        CHECK(r.outcome.at(0) == 2);
    }
}

TEST_CASE("ghz pair measurement yields one of the two codewords") {
    Rng rng(11);
    const PureState bell = ghz_like(DigitString::from_text("01"));
    int seen01 = 0;
    int seen10 = 0;
    for (int i = 0; i < 4000; ++i) {
        const auto r = measure_sites(bell, {0, 1}, Basis::Computational, rng);
        const auto text = r.outcome.to_text();
        REQUIRE((text == "01" || text == "10"));
        seen01 += text == "01";
        seen10 += text == "10";
    }
    // 3-sigma band around 1/2
    CHECK(std::abs(seen01 / 4000.0 - 0.5) < 3.0 * std::sqrt(0.25 / 4000.0));
    CHECK(seen01 + seen10 == 4000);
}

TEST_CASE("measure_sites errors") {
    Rng rng(5);
    const PureState bell = ghz_like(DigitString::from_text("01"));
    CHECK_THROWS_AS(measure_sites(bell, {}, Basis::Computational, rng), std::invalid_argument);
    CHECK_THROWS_AS(measure_sites(bell, {2}, Basis::Computational, rng), std::invalid_argument);
    CHECK_THROWS_AS(measure_sites(bell, {0, 0}, Basis::Computational, rng), std::invalid_argument);
}

TEST_CASE("collapse is consistent and normalized") {
    Rng rng(17);
    for (int rep = 0; rep < 40; ++rep) {
        PureState state = random_state(2, 4, rng);
        for (const Basis basis : {Basis::Computational, Basis::Fourier}) {
            const std::vector<std::size_t> sites{0, 2};
            const auto first = measure_sites(state, sites, basis, rng);
            CHECK(std::abs(first.collapsed.norm_squared() - 1.0) < kTol);
            // Re-measuring the collapsed state repeats the outcome with certainty.
            for (int again = 0; again < 3; ++again) {
                const auto second = measure_sites(first.collapsed, sites, basis, rng);
                CHECK(second.outcome == first.outcome);
            }
        }
    }
}

TEST_CASE("full measurement leaves a deterministic product state") {
    Rng rng(23);
    PureState state = random_state(3, 3, rng);
    for (const Basis basis : {Basis::Computational, Basis::Fourier}) {
        const auto r = measure_sites(state, all_sites(3), basis, rng);
        // The collapsed state is the explicit product of observed basis vectors.
        std::vector<std::vector<Amplitude>> factors;
        for (std::size_t i = 0; i < 3; ++i) {
            factors.push_back(basis == Basis::Fourier
                                  ? reference::fourier_vec(r.outcome.at(i), 3)
                                  : reference::computational_vec(r.outcome.at(i), 3));
        }
        const auto expect = reference::kron(factors);
        for (std::size_t i = 0; i < expect.size(); ++i) {
            CHECK(close(r.collapsed.amplitudes[i], expect[i]));
        }
    }
}

TEST_CASE("marginal distributions agree with the brute-force oracle") {
    Rng rng(29);
    struct Shape {
        int radix;
        int sites;
        std::vector<std::size_t> measured;
    };
    const Shape shapes[] = {
        {2, 4, {1, 3}}, {2, 4, {0}}, {2, 4, {0, 1, 2, 3}}, {3, 2, {0}}, {3, 2, {1}},
        {6, 1, {0}},    {2, 1, {0}}, {5, 2, {0, 1}},
    };
    for (const auto& shape : shapes) {
        for (int rep = 0; rep < 4; ++rep) {
            const PureState state = random_state(shape.radix, shape.sites, rng);
            for (const Basis basis : {Basis::Computational, Basis::Fourier}) {
                const auto fast = outcome_probabilities(state, shape.measured, basis);
                const auto slow = reference::measurement_distribution(state, shape.measured, basis);
                REQUIRE(fast.size() == slow.size());
                for (std::size_t i = 0; i < fast.size(); ++i) {
                    CHECK(std::abs(fast[i] - slow[i]) < 1e-11);
                }
            }
        }
    }
}

TEST_CASE("partial Fourier collapse matches the explicit projection") {
    Rng rng(41);
    for (int rep = 0; rep < 25; ++rep) {
        const PureState state = random_state(2, 4, rng);
        const std::vector<std::size_t> sites{1, 3};
        const auto r = measure_sites(state, sites, Basis::Fourier, rng);

        // project the original state onto the observed Fourier vectors by hand
        const auto v1 = reference::fourier_vec(r.outcome.at(0), 2);
        const auto v3 = reference::fourier_vec(r.outcome.at(1), 2);
        std::vector<Amplitude> projected(16, Amplitude{0.0, 0.0});
        for (int s0 = 0; s0 < 2; ++s0) {
            for (int s2 = 0; s2 < 2; ++s2) {
                // conditional amplitude on the unmeasured sites (0, 2)
                Amplitude w{0.0, 0.0};
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        const std::size_t idx = static_cast<std::size_t>(s0 * 8 + a * 4 + s2 * 2 + b);
                        w += std::conj(v1[a] * v3[b]) * state.amplitudes[idx];
                    }
                }
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        const std::size_t idx = static_cast<std::size_t>(s0 * 8 + a * 4 + s2 * 2 + b);
                        projected[idx] += w * v1[a] * v3[b];
                    }
                }
            }
        }
        double norm = 0.0;
        for (const auto& a : projected) {
            norm += std::norm(a);
        }
        const double scale = 1.0 / std::sqrt(norm);
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK(std::abs(projected[i] * scale - r.collapsed.amplitudes[i]) < 1e-9);
        }
    }
}

TEST_CASE("outcome digits follow the caller's site order") {
    const PureState state = encode_string(DigitString::from_text("012", 3),
                                          DigitString::from_text("000"), 3);
    Rng ra(9);
    Rng rb(9);
    const auto forward = measure_sites(state, {0, 2}, Basis::Computational, ra);
    const auto reversed = measure_sites(state, {2, 0}, Basis::Computational, rb);
    CHECK(forward.outcome.at(0) == 0);
    CHECK(forward.outcome.at(1) == 2);
    CHECK(reversed.outcome.at(0) == 2);
    CHECK(reversed.outcome.at(1) == 0);
}

TEST_CASE("sampled frequencies follow the analytic marginals") {
    Rng rng(31);
    const PureState state = random_state(2, 3, rng);
    const std::vector<std::size_t> sites{0, 2};
    const auto probs = outcome_probabilities(state, sites, Basis::Fourier);
    std::vector<std::int64_t> counts(probs.size(), 0);
    const std::int64_t trials = 50000;
    for (std::int64_t i = 0; i < trials; ++i) {
        const auto r = measure_sites(state, sites, Basis::Fourier, rng);
        ++counts[r.outcome.index()];
    }
    // chi-square at alpha = 0.001, df = 3 (four cells)
    double stat = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double expect = probs[i] * static_cast<double>(trials);
        stat += (counts[i] - expect) * (counts[i] - expect) / expect;
    }
    CHECK(stat < 16.2662);
}

TEST_CASE("inner products: orthonormality and the MUB property") {
    const PureState e0 = basis_vector(0, Basis::Computational, 2);
    const PureState e1 = basis_vector(1, Basis::Computational, 2);
    CHECK(close(inner_product(e0, e0), {1.0, 0.0}));
    CHECK(close(inner_product(e0, e1), {0.0, 0.0}));

    for (const int d : {2, 3, 5, 6, 7}) {
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                const double overlap = std::norm(
                    inner_product(basis_vector(i, Basis::Fourier, d), basis_vector(j, Basis::Computational, d)));
                CHECK(std::abs(overlap - 1.0 / d) < kTol);
            }
        }
    }
    CHECK_THROWS_AS(inner_product(e0, basis_vector(0, Basis::Computational, 3)), std::invalid_argument);
}

TEST_CASE("the Fourier basis matrix is unitary") {
    for (const int d : {2, 3, 5, 6, 7}) {
        std::vector<PureState> rows;
        rows.reserve(d);
        for (int i = 0; i < d; ++i) {
            rows.push_back(basis_vector(i, Basis::Fourier, d));
        }
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                const Amplitude dot = inner_product(rows[i], rows[j]);
                const Amplitude expect = i == j ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
                CHECK(close(dot, expect));
            }
        }
    }
}

TEST_CASE("projective_check outcomes") {
    Rng rng(37);
    const DigitString x = DigitString::from_text("0110");
    const PureState target = ghz_like(x);

    for (int i = 0; i < 200; ++i) {
        CHECK(projective_check(target, target, rng) == ProjectiveOutcome::Pass);
    }

    // |x> - |x-bar> is exactly orthogonal to the target
    PureState orthogonal = target;
    orthogonal.amplitudes[x.negated().index()] *= -1.0;
    for (int i = 0; i < 200; ++i) {
        CHECK(projective_check(orthogonal, target, rng) == ProjectiveOutcome::Fail);
    }

    // |x> passes with probability 1/2
    PureState collapsed{2, 4, std::vector<Amplitude>(16, Amplitude{0.0, 0.0})};
    collapsed.amplitudes[x.index()] = Amplitude{1.0, 0.0};
    int passes = 0;
    const int trials = 8000;
    for (int i = 0; i < trials; ++i) {
        passes += projective_check(collapsed, target, rng) == ProjectiveOutcome::Pass;
    }
    CHECK(std::abs(passes / static_cast<double>(trials) - 0.5) < 3.0 * std::sqrt(0.25 / trials));

    CHECK_THROWS_AS(projective_check(collapsed, basis_vector(0, Basis::Computational, 2), rng),
                    std::invalid_argument);
    const PureState unnormalized{2, 4, std::vector<Amplitude>(16, Amplitude{0.0, 0.0})};
    CHECK_THROWS_AS(projective_check(collapsed, unnormalized, rng), std::invalid_argument);
}

TEST_CASE("state cap is enforced") {
    CHECK_THROWS_AS(state_dimension(2, 21), std::length_error);
    CHECK_THROWS_AS(state_dimension(7, 8), std::length_error);
    CHECK(state_dimension(2, 20) == (1ull << 20));
    CHECK(state_dimension(7, 7) == 823543ull);
}
