#include "ceqss/cdpke.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ceqss {

namespace {

DigitString sample_bases(int length, BasisPolicy policy, Rng& rng) {
    std::vector<std::uint8_t> bits(length, 0);
    if (policy == BasisPolicy::FixedHalf) {
        const int ones = (length + 1) / 2;
        // Partial Fisher-Yates over site positions.
        std::vector<int> order(length);
        std::iota(order.begin(), order.end(), 0);
        for (int i = 0; i < ones; ++i) {
            const int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(length - i)));
            std::swap(order[i], order[j]);
            bits[order[i]] = 1;
        }
    } else {
        while (true) {
            int ones = 0;
            for (auto& b : bits) {
                b = static_cast<std::uint8_t>(rng.next_digit(2));
                ones += b;
            }
            if (ones > 0 && ones < length) {
                break;
            }
        }
    }
    return DigitString(std::move(bits), 2);
}

Bytes encode_classical(const DigitString& bases, int masked, int radix) {
    ByteWriter w;
    w.put_digit_string(bases);
    w.put_u32(static_cast<std::uint32_t>(radix));
    w.put_u32(static_cast<std::uint32_t>(masked));
    return w.take();
}

} // namespace

PureState ProductRegister::joint() const {
    state_dimension(radix, length());  // enforce the dense cap before expanding
    PureState acc{radix, 0, {Amplitude{1.0, 0.0}}};
    for (const auto& site : site_states) {
        std::vector<Amplitude> next(acc.amplitudes.size() * site.amplitudes.size());
        for (std::size_t i = 0; i < acc.amplitudes.size(); ++i) {
            for (std::size_t j = 0; j < site.amplitudes.size(); ++j) {
                next[i * site.amplitudes.size() + j] = acc.amplitudes[i] * site.amplitudes[j];
            }
        }
        acc.amplitudes = std::move(next);
        ++acc.sites;
    }
    return acc;
}

ProductRegister encode_register(const DigitString& values, const DigitString& bases, int radix) {
    if (values.size() != bases.size()) {
        throw std::invalid_argument("encode_register: values and bases lengths differ");
    }
    if (values.radix() != radix) {
        throw std::invalid_argument("encode_register: values radix mismatch");
    }
    ProductRegister reg{radix, {}};
    reg.site_states.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Basis b = bases.at(i) == 0 ? Basis::Computational : Basis::Fourier;
        reg.site_states.push_back(basis_vector(values.at(i), b, radix));
    }
    return reg;
}

DigitString measure_register(ProductRegister& reg, Basis basis, Rng& rng) {
    std::vector<std::uint8_t> outcome(static_cast<std::size_t>(reg.length()));
    for (std::size_t i = 0; i < reg.site_states.size(); ++i) {
        auto result = measure_sites(reg.site_states[i], {0}, basis, rng);
        outcome[i] = static_cast<std::uint8_t>(result.outcome.at(0));
        reg.site_states[i] = std::move(result.collapsed);
    }
    return DigitString(std::move(outcome), reg.radix);
}

std::pair<CDCiphertext, CDRecord> cd_encrypt(int payload, int length, int radix,
                                             const CipherKey& key, Rng& rng,
                                             BasisPolicy policy, const ClassicalCipher& cipher) {
    if (radix < 2) {
        throw std::invalid_argument("cd_encrypt: radix must be >= 2");
    }
    if (payload < 0 || payload >= radix) {
        throw std::invalid_argument("cd_encrypt: payload out of range");
    }
    if (length < 2) {
        throw std::invalid_argument("cd_encrypt: length must be >= 2");
    }
    state_dimension(radix, length);

    const DigitString values = DigitString::random(length, radix, rng);
    const DigitString bases = sample_bases(length, policy, rng);

    int masked = payload;
    for (int i = 0; i < length; ++i) {
        if (bases.at(i) == 0) {
            masked = (masked + values.at(i)) % radix;
        }
    }

    const std::uint64_t nonce = rng.next_u64();
    CDCiphertext ct{encode_register(values, bases, radix),
                    cipher.encrypt(key, nonce, encode_classical(bases, masked, radix)), length, radix,
                    false};
    CDRecord record{values, bases, key, payload};
    return {std::move(ct), std::move(record)};
}

std::pair<DigitString, int> cd_open_classical(const Bytes& classical, const CipherKey& key,
                                              const ClassicalCipher& cipher) {
    const Bytes plain = cipher.decrypt(key, classical);
    ByteReader r(plain);
    DigitString bases = r.get_digit_string();
    const int radix = static_cast<int>(r.get_u32());
    const int masked = static_cast<int>(r.get_u32());
    if (!r.exhausted() || masked >= radix) {
        throw AuthenticationError();
    }
    return {std::move(bases), masked};
}

int cd_unmask(const DigitString& outcomes, const DigitString& bases, int masked) {
    if (outcomes.size() != bases.size()) {
        throw std::invalid_argument("cd_unmask: outcome and basis lengths differ");
    }
    const int radix = outcomes.radix();
    int sum = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (bases.at(i) == 0) {
            sum = (sum + outcomes.at(i)) % radix;
        }
    }
    return ((masked - sum) % radix + radix) % radix;
}

int cd_decrypt(CDCiphertext& ct, const CipherKey& key, Rng& rng, const ClassicalCipher& cipher) {
    if (ct.consumed) {
        throw std::logic_error("cd_decrypt: quantum part already consumed");
    }
    auto [bases, masked] = cd_open_classical(ct.classical, key, cipher);
    const DigitString outcomes = measure_register(ct.quantum, Basis::Computational, rng);
    ct.consumed = true;
    return cd_unmask(outcomes, bases, masked);
}

DeletionCertificate cd_delete(CDCiphertext& ct, Rng& rng) {
    if (ct.consumed) {
        throw std::logic_error("cd_delete: quantum part already consumed");
    }
    DigitString outcomes = measure_register(ct.quantum, Basis::Fourier, rng);
    ct.consumed = true;
    return DeletionCertificate{std::move(outcomes)};
}

CertVerdict cd_verify(const CDRecord& record, const DeletionCertificate& cert) {
    if (cert.outcomes.size() != record.values.size()) {
        throw std::invalid_argument("cd_verify: certificate length mismatch");
    }
    for (std::size_t i = 0; i < record.values.size(); ++i) {
        if (record.bases.at(i) == 1 && cert.outcomes.at(i) != record.values.at(i)) {
            return CertVerdict::Rejected;
        }
    }
    return CertVerdict::Accepted;
}

DigitString cd_tamper_measure(CDCiphertext& ct, Rng& rng) {
    return measure_register(ct.quantum, Basis::Computational, rng);
}

Bytes serialize_record(const CDRecord& record) {
    ByteWriter w;
    w.put_digit_string(record.values);
    w.put_digit_string(record.bases);
    w.put_u64(record.key.id);
    Bytes material(record.key.material.begin(), record.key.material.end());
    w.put_bytes(material);
    w.put_u32(static_cast<std::uint32_t>(record.payload));
    return w.take();
}

CDRecord parse_record(const Bytes& bytes) {
    ByteReader r(bytes);
    DigitString values = r.get_digit_string();
    DigitString bases = r.get_digit_string();
    CipherKey key;
    key.id = r.get_u64();
    const Bytes material = r.get_bytes();
    if (material.size() != key.material.size()) {
        throw std::runtime_error("parse_record: bad key material length");
    }
    std::copy(material.begin(), material.end(), key.material.begin());
    const int payload = static_cast<int>(r.get_u32());
    if (!r.exhausted()) {
        throw std::runtime_error("parse_record: trailing bytes");
    }
    return CDRecord{std::move(values), std::move(bases), key, payload};
}

Bytes serialize_certificate(const DeletionCertificate& cert) {
    return serialize_digit_string(cert.outcomes);
}

DeletionCertificate parse_certificate(const Bytes& bytes) {
    return DeletionCertificate{parse_digit_string(bytes)};
}

Bytes serialize_classical_part(const CDCiphertext& ct) {
    ByteWriter w;
    w.put_bytes(ct.classical);
    return w.take();
}

} // namespace ceqss
