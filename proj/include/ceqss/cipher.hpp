// cipher.hpp
// The classical encryption layer behind the certified-deletion ciphertexts.
// The protocol assumes a post-quantum secure cipher; everything measurable
// here is information-theoretic given an ideal cipher, so the layer is an
// interface with a keyed-stream reference implementation. The reference is
// a modeling stand-in, not a real cipher.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "ceqss/rng.hpp"
#include "ceqss/wire.hpp"

namespace ceqss {

struct AuthenticationError : std::runtime_error {
    AuthenticationError() : std::runtime_error("ciphertext failed authentication") {}
};

struct CipherKey {
    std::uint64_t id = 0;                      // unique per deal
    std::array<std::uint8_t, 32> material{};   // 256 bits of key material
};

CipherKey make_cipher_key(std::uint64_t id, Rng& rng);

// Ideal-cipher contract: decrypt(k, encrypt(k, nonce, p)) == p; decryption
// under a different key or of a tampered ciphertext throws
// AuthenticationError; encryption is deterministic given (key, nonce, p).
class ClassicalCipher {
public:
    virtual ~ClassicalCipher() = default;
    virtual Bytes encrypt(const CipherKey& key, std::uint64_t nonce, const Bytes& plaintext) const = 0;
    virtual Bytes decrypt(const CipherKey& key, const Bytes& ciphertext) const = 0;
};

// Reference implementation: a seeded keyed stream plus an authentication tag.
class KeyedStreamCipher final : public ClassicalCipher {
public:
    Bytes encrypt(const CipherKey& key, std::uint64_t nonce, const Bytes& plaintext) const override;
    Bytes decrypt(const CipherKey& key, const Bytes& ciphertext) const override;
};

const ClassicalCipher& default_cipher();

} // namespace ceqss
