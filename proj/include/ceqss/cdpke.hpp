// cdpke.hpp
// Public-key-style encryption with certified deletion over qubits (d=2) and
// qudits. A digit payload is masked by the computational-basis positions of
// a random BB84-style register; measuring the register in the Fourier basis
// destroys the mask and yields a classical deletion certificate the dealer
// can verify at the Fourier-encoded positions.

#pragma once

#include <cstdint>
#include <utility>

#include "ceqss/cipher.hpp"
#include "ceqss/digits.hpp"
#include "ceqss/rng.hpp"
#include "ceqss/state.hpp"
#include "ceqss/wire.hpp"

namespace ceqss {

// How the basis-selection string is drawn. FixedHalf puts exactly
// ceil(m/2) Fourier positions at random places, making the detection bound
// deterministic. IidNondegenerate draws i.i.d. bits, resampling the
// all-computational and all-Fourier strings (empty mask / vacuous
// certificate).
enum class BasisPolicy { FixedHalf, IidNondegenerate };

// A BB84-style register stored factored: one single-site PureState per
// position. The register is a product state through its whole life cycle
// (preparation and whole-register measurements both keep it a product), so
// the factored form is exact and keeps per-trial cost at O(m d^2) instead
// of O(d^m).
struct ProductRegister {
    int radix = 2;
    std::vector<PureState> site_states;

    int length() const { return static_cast<int>(site_states.size()); }

    // The dense joint state, for cross-checks against the dense simulator.
    PureState joint() const;
};

ProductRegister encode_register(const DigitString& values, const DigitString& bases, int radix);

// Born measurement of every site in the given basis; collapses in place.
DigitString measure_register(ProductRegister& reg, Basis basis, Rng& rng);

struct CDCiphertext {
    ProductRegister quantum;  // |x>_theta, single-site basis vectors until tampered with
    Bytes classical;          // ENC(key; bases, masked payload)
    int length = 0;           // m
    int radix = 2;            // d
    bool consumed = false;
};

// The dealer's verification record for one ciphertext.
struct CDRecord {
    DigitString values;  // x, radix d, length m
    DigitString bases;   // binary, 0 = computational, 1 = Fourier
    CipherKey key;
    int payload = 0;     // b, one digit
};

struct DeletionCertificate {
    DigitString outcomes;  // Fourier measurement results, length m
};

enum class CertVerdict { Accepted, Rejected };

std::pair<CDCiphertext, CDRecord> cd_encrypt(int payload, int length, int radix,
                                             const CipherKey& key, Rng& rng,
                                             BasisPolicy policy = BasisPolicy::FixedHalf,
                                             const ClassicalCipher& cipher = default_cipher());

// Honest decryption: measure every site computationally, decrypt the
// classical part, unmask. Consumes the quantum part.
int cd_decrypt(CDCiphertext& ct, const CipherKey& key, Rng& rng,
               const ClassicalCipher& cipher = default_cipher());

// Honest deletion: measure every site in the Fourier basis and hand the
// outcomes to the dealer. Consumes the quantum part.
DeletionCertificate cd_delete(CDCiphertext& ct, Rng& rng);

// Accepted iff the certificate matches the prepared values at every
// Fourier-encoded position; computational positions are ignored.
CertVerdict cd_verify(const CDRecord& record, const DeletionCertificate& cert);

// Adversarial computational-basis measurement before the unseal event. The
// register collapses in place and stays returnable: the cheater keeps the
// (now classical) particles and can still answer a later deletion request.
DigitString cd_tamper_measure(CDCiphertext& ct, Rng& rng);

// Recover the payload from whole-register computational outcomes plus the
// decrypted classical part. Split out so adversarial flows can decrypt
// collapsed registers.
int cd_unmask(const DigitString& outcomes, const DigitString& bases, int masked);

// Decrypt the classical part into (bases, masked payload).
std::pair<DigitString, int> cd_open_classical(const Bytes& classical, const CipherKey& key,
                                              const ClassicalCipher& cipher = default_cipher());

// Trial-log serialization (little-endian, length-prefixed; see wire.hpp).
Bytes serialize_record(const CDRecord& record);
CDRecord parse_record(const Bytes& bytes);
Bytes serialize_certificate(const DeletionCertificate& cert);
DeletionCertificate parse_certificate(const Bytes& bytes);
Bytes serialize_classical_part(const CDCiphertext& ct);

} // namespace ceqss
