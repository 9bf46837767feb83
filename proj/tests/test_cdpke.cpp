#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <map>
#include <tuple>

#include "ceqss/cdpke.hpp"
#include "reference.hpp"

using namespace ceqss;

namespace {

bool in_band(double rate, double p, std::int64_t n) {
    return std::abs(rate - p) <= 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

int fourier_weight(const DigitString& bases) {
    int w = 0;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        w += bases.at(i);
    }
    return w;
}

} // namespace

TEST_CASE("keyed stream cipher honors the ideal-cipher contract") {
    Rng rng(1);
    const CipherKey key = make_cipher_key(1, rng);
    const CipherKey other = make_cipher_key(2, rng);
    const KeyedStreamCipher cipher;

    for (int rep = 0; rep < 1000; ++rep) {
        Bytes plain(rng.next_below(40) + 1);
        for (auto& b : plain) {
            b = static_cast<std::uint8_t>(rng.next_below(256));
        }
        const Bytes ct = cipher.encrypt(key, rng.next_u64(), plain);
        CHECK(cipher.decrypt(key, ct) == plain);
    }

    const Bytes plain{1, 2,  3, 4};
    const Bytes ct = cipher.encrypt(key, 77, plain);
    CHECK_THROWS_AS(cipher.decrypt(other, ct), AuthenticationError);

    Bytes tampered = ct;
    tampered[tampered.size() / 2] ^= 0x40;
    CHECK_THROWS_AS(cipher.decrypt(key, tampered), AuthenticationError);
    CHECK_THROWS_AS(cipher.decrypt(key, Bytes{1, 2, 3}), AuthenticationError);

    CHECK(cipher.encrypt(key, 77, plain) == ct);           // deterministic per (key, nonce, p)
    CHECK(cipher.encrypt(key, 78, plain) != ct);           // fresh nonce, fresh ciphertext
    CHECK(cipher.encrypt(other, 77, plain) != ct);
}

TEST_CASE("encryption masks the payload with the computational positions") {
    Rng rng(2);
    for (const int d : {2, 6, 7}) {
        for (int rep = 0; rep < 50; ++rep) {
            const int payload = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d)));
            const CipherKey key = make_cipher_key(static_cast<std::uint64_t>(rep), rng);
            auto [ct, record] = cd_encrypt(payload, 6, d, key, rng);
            const auto [bases, masked] = cd_open_classical(ct.classical, key);
            CHECK(bases == record.bases);
            int expect = payload;
            for (int i = 0; i < 6; ++i) {
                if (record.bases.at(i) == 0) {
                    expect = (expect + record.values.at(i)) % d;
                }
            }
            CHECK(masked == expect);
        }
    }
    // the d=6 mask arithmetic: digits at computational positions summing to 5
    // mask payload 4 as (4+5) mod 6 = 3, and unmasking inverts it
    const DigitString outcomes(std::vector<std::uint8_t>{2, 3, 0}, 6);
    const DigitString bases(std::vector<std::uint8_t>{0, 0, 1}, 2);
    CHECK(cd_unmask(outcomes, bases, 3) == 4);

    // a single computational position makes the mask one term wide
    for (int xj = 0; xj < 2; ++xj) {
        for (int masked = 0; masked < 2; ++masked) {
            const DigitString one_zero(std::vector<std::uint8_t>{1, 0, 1}, 2);
            DigitString obs = DigitString::from_text("101");
            obs.set(1, xj);
            CHECK(cd_unmask(obs, one_zero, masked) == (masked ^ xj));
        }
    }
}

TEST_CASE("basis policies avoid degenerate selections") {
    Rng rng(3);
    for (const int m : {2, 3, 4, 5, 16}) {
        const CipherKey key = make_cipher_key(0, rng);
        for (int rep = 0; rep < 40; ++rep) {
            auto [ct, record] = cd_encrypt(0, m, 2, key, rng, BasisPolicy::FixedHalf);
            CHECK(fourier_weight(record.bases) == (m + 1) / 2);
        }
    }
    for (int rep = 0; rep < 10000; ++rep) {
        const CipherKey key = make_cipher_key(0, rng);
        auto [ct, record] = cd_encrypt(1, 4, 2, key, rng, BasisPolicy::IidNondegenerate);
        const int w = fourier_weight(record.bases);
        CHECK(w > 0);
        CHECK(w < 4);
    }
}

TEST_CASE("cd_encrypt rejects bad parameters") {
    Rng rng(4);
    const CipherKey key = make_cipher_key(0, rng);
    CHECK_THROWS_AS(cd_encrypt(2, 4, 2, key, rng), std::invalid_argument);
    CHECK_THROWS_AS(cd_encrypt(-1, 4, 2, key, rng), std::invalid_argument);
    CHECK_THROWS_AS(cd_encrypt(0, 1, 2, key, rng), std::invalid_argument);
    CHECK_THROWS_AS(cd_encrypt(0, 21, 2, key, rng), std::length_error);
}

TEST_CASE("decryption round-trips every payload") {
    Rng rng(5);
    for (const int d : {2, 3, 5, 6, 7}) {
        const int reps = (d == 2 || d == 7) ? 500 : 40;
        for (int payload = 0; payload < d; ++payload) {
            for (int rep = 0; rep < reps; ++rep) {
                const CipherKey key = make_cipher_key(static_cast<std::uint64_t>(rep), rng);
                auto [ct, record] = cd_encrypt(payload, 5, d, key, rng);
                CHECK(cd_decrypt(ct, key, rng) == payload);
            }
        }
    }
}

TEST_CASE("the quantum part is single-consumption") {
    Rng rng(6);
    const CipherKey key = make_cipher_key(0, rng);
    auto [ct, record] = cd_encrypt(1, 4, 2, key, rng);
    cd_decrypt(ct, key, rng);
    CHECK_THROWS_AS(cd_decrypt(ct, key, rng), std::logic_error);
    CHECK_THROWS_AS(cd_delete(ct, rng), std::logic_error);

    auto [ct2, record2] = cd_encrypt(1, 4, 2, key, rng);
    cd_delete(ct2, rng);
    CHECK_THROWS_AS(cd_decrypt(ct2, key, rng), std::logic_error);
}

TEST_CASE("honest deletion certifies the Fourier positions exactly") {
    Rng rng(7);
    for (int rep = 0; rep < 300; ++rep) {
        const CipherKey key = make_cipher_key(0, rng);
        auto [ct, record] = cd_encrypt(rep % 2, 8, 2, key, rng);
        const DeletionCertificate cert = cd_delete(ct, rng);
        for (std::size_t i = 0; i < 8; ++i) {
            if (record.bases.at(i) == 1) {
                CHECK(cert.outcomes.at(i) == record.values.at(i));
            }
        }
        CHECK(cd_verify(record, cert) == CertVerdict::Accepted);
    }
}

TEST_CASE("deletion outcomes at computational positions are uniform") {
    // one fixed record, many deletions of identically prepared registers
    Rng rng(8);
    const CipherKey key = make_cipher_key(0, rng);
    auto [ct0, record] = cd_encrypt(1, 4, 2, key, rng);
    const int trials = 50000;
    std::vector<std::int64_t> ones(4, 0);
    for (int rep = 0; rep < trials; ++rep) {
        CDCiphertext ct{encode_register(record.values, record.bases, 2), ct0.classical, 4, 2, false};
        const DeletionCertificate cert = cd_delete(ct, rng);
        for (std::size_t i = 0; i < 4; ++i) {
            ones[i] += cert.outcomes.at(i);
        }
    }
    for (std::size_t i = 0; i < 4; ++i) {
        if (record.bases.at(i) == 0) {
            // chi-square df=1 at alpha 0.001 for a fair bit
            const double diff = ones[i] - trials / 2.0;
            const double stat = 4.0 * diff * diff / trials;
            CHECK(stat < 10.8276);
        } else {
            CHECK((ones[i] == 0 || ones[i] == trials));  // pinned to the prepared value
        }
    }
}

TEST_CASE("a two-site register with one Fourier site certifies it always") {
    Rng rng(9);
    const DigitString values = DigitString::from_text("10");
    const DigitString bases = DigitString::from_text("01");
    for (int rep = 0; rep < 100; ++rep) {
        CDCiphertext ct{encode_register(values, bases, 2), {}, 2, 2, false};
        const DeletionCertificate cert = cd_delete(ct, rng);
        CHECK(cert.outcomes.at(1) == 0);
    }
}

TEST_CASE("decrypt-then-delete escapes verification with rate 2^-w") {
    Rng rng(10);
    const int m = 8;
    const int trials = 20000;
    int accepted = 0;
    int expected_w = 0;
    for (int rep = 0; rep < trials; ++rep) {
        const CipherKey key = make_cipher_key(0, rng);
        auto [ct, record] = cd_encrypt(rep % 2, m, 2, key, rng);
        expected_w = fourier_weight(record.bases);
        cd_tamper_measure(ct, rng);               // the dishonest decryption measurement
        const DeletionCertificate cert = cd_delete(ct, rng);
        accepted += cd_verify(record, cert) == CertVerdict::Accepted;
    }
    const double escape = std::pow(2.0, -expected_w);
    CHECK(in_band(accepted / static_cast<double>(trials), escape, trials));
}

TEST_CASE("uniformly random certificates pass with rate d^-w") {
    Rng rng(11);
    const int m = 6;
    const CipherKey key = make_cipher_key(0, rng);
    auto [ct, record] = cd_encrypt(1, m, 2, key, rng);
    const int w = fourier_weight(record.bases);
    // exact counting over the full certificate space
    std::uint64_t accepted = 0;
    for (std::uint64_t c = 0; c < (1ull << m); ++c) {
        const DeletionCertificate cert{DigitString::from_index(c, m, 2)};
        accepted += cd_verify(record, cert) == CertVerdict::Accepted;
    }
    CHECK(accepted * (1ull << w) == (1ull << m));
    CHECK_THROWS_AS(cd_verify(record, DeletionCertificate{DigitString::from_text("01")}),
                    std::invalid_argument);
}

TEST_CASE("deletion destroys the payload: post-deletion decryption is a coin flip") {
    // branch enumeration over the real record: every computational outcome of
    // the deleted register is equally likely, and exactly half unmask to b
    Rng rng(12);
    for (int m = 2; m <= 6; ++m) {
        const CipherKey key = make_cipher_key(0, rng);
        const int payload = m % 2;
        auto [ct, record] = cd_encrypt(payload, m, 2, key, rng);
        const auto [bases, masked] = cd_open_classical(ct.classical, key);
        std::uint64_t hits = 0;
        for (std::uint64_t c = 0; c < (1ull << m); ++c) {
            const DigitString outcomes = DigitString::from_index(c, m, 2);
            hits += cd_unmask(outcomes, bases, masked) == payload;
        }
        CHECK(hits * 2 == (1ull << m));
    }

    // and the simulated flow agrees: delete, then measure what is left
    const int trials = 4000;
    int correct = 0;
    for (int rep = 0; rep < trials; ++rep) {
        const CipherKey key = make_cipher_key(0, rng);
        auto [ct, record] = cd_encrypt(1, 4, 2, key, rng);
        cd_delete(ct, rng);
        const DigitString outcomes = measure_register(ct.quantum, Basis::Computational, rng);
        const auto [bases, masked] = cd_open_classical(ct.classical, key);
        correct += cd_unmask(outcomes, bases, masked) == 1;
    }
    CHECK(in_band(correct / static_cast<double>(trials), 0.5, trials));
}

TEST_CASE("post-deletion tuples are identically distributed for both payloads") {
    // exact enumeration at unit scale; the acceptance suite extends to m <= 6
    using Key = std::tuple<std::uint64_t, std::uint64_t, int>;
    for (int m = 2; m <= 4; ++m) {
        const int w = (m + 1) / 2;
        const int zeros = m - w;
        std::map<Key, std::uint64_t> dist[2];
        for (int payload = 0; payload < 2; ++payload) {
            for (std::uint64_t theta = 0; theta < (1ull << m); ++theta) {
                if (std::popcount(theta) != w) {
                    continue;
                }
                for (std::uint64_t x = 0; x < (1ull << m); ++x) {
                    int masked = payload;
                    for (int i = 0; i < m; ++i) {
                        if (!(theta & (1ull << i))) {
                            masked ^= static_cast<int>((x >> i) & 1);
                        }
                    }
                    for (std::uint64_t fill = 0; fill < (1ull << zeros); ++fill) {
                        std::uint64_t cert = 0;
                        int bit = 0;
                        for (int i = 0; i < m; ++i) {
                            cert |= ((theta & (1ull << i)) ? (x >> i) & 1 : (fill >> bit++) & 1) << i;
                        }
                        ++dist[payload][{cert, theta, masked}];
                    }
                }
            }
        }
        CHECK(dist[0] == dist[1]);
    }
}

TEST_CASE("the product register matches the dense joint state") {
    Rng rng(13);
    for (const int d : {2, 3}) {
        const DigitString values = DigitString::random(4, d, rng);
        const DigitString bases = DigitString::random(4, 2, rng);
        const ProductRegister reg = encode_register(values, bases, d);
        const PureState joint = reg.joint();
        joint.check_valid();

        const PureState dense = encode_string(values, bases, d);
        REQUIRE(joint.dimension() == dense.dimension());
        for (std::size_t i = 0; i < joint.dimension(); ++i) {
            CHECK(std::abs(joint.amplitudes[i] - dense.amplitudes[i]) < 1e-12);
        }

        // per-site marginals equal the joint-state marginals from the dense path
        for (const Basis basis : {Basis::Computational, Basis::Fourier}) {
            const auto joint_probs = outcome_probabilities(dense, {0, 1, 2, 3}, basis);
            for (std::uint64_t o = 0; o < joint_probs.size(); ++o) {
                const DigitString digits = DigitString::from_index(o, 4, d);
                double p = 1.0;
                for (std::size_t s = 0; s < 4; ++s) {
                    const auto site_probs = outcome_probabilities(reg.site_states[s], {0}, basis);
                    p *= site_probs[static_cast<std::size_t>(digits.at(s))];
                }
                CHECK(std::abs(p - joint_probs[o]) < 1e-11);
            }
        }
    }
}

TEST_CASE("trial-log serialization round-trips") {
    Rng rng(14);
    const CipherKey key = make_cipher_key(42, rng);
    auto [ct, record] = cd_encrypt(1, 6, 2, key, rng);

    const Bytes record_bytes = serialize_record(record);
    const CDRecord back = parse_record(record_bytes);
    CHECK(back.values == record.values);
    CHECK(back.bases == record.bases);
    CHECK(back.key.id == record.key.id);
    CHECK(back.key.material == record.key.material);
    CHECK(back.payload == record.payload);

    const DeletionCertificate cert = cd_delete(ct, rng);
    CHECK(parse_certificate(serialize_certificate(cert)).outcomes == cert.outcomes);

    // digit-string wire format: fixed 8-byte header then one digit per byte
    const DigitString s(std::vector<std::uint8_t>{0, 1, 2, 3}, 4);
    const Bytes bytes = serialize_digit_string(s);
    const Bytes expect{4, 0, 0, 0, 4, 0, 0, 0, 0, 1, 2, 3};
    CHECK(bytes == expect);
    CHECK(parse_digit_string(bytes) == s);

    Bytes truncated(bytes.begin(), bytes.end() - 2);
    CHECK_THROWS_AS(parse_digit_string(truncated), std::runtime_error);
}
