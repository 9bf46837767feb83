#include "ceqss/cipher.hpp"

namespace ceqss {

namespace {

constexpr std::size_t kNonceBytes = 8;
constexpr std::size_t kLenBytes = 8;
constexpr std::size_t kTagBytes = 16;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t key_fingerprint(const CipherKey& key, std::uint64_t domain) {
    std::uint64_t h = 0x6a09e667f3bcc909ull ^ domain;
    for (std::size_t i = 0; i < key.material.size(); i += 8) {
        std::uint64_t chunk = 0;
        for (std::size_t j = 0; j < 8; ++j) {
            chunk |= static_cast<std::uint64_t>(key.material[i + j]) << (8 * j);
        }
        h = mix64(h ^ chunk);
    }
    return h;
}

// Keyed 128-bit tag over the framed ciphertext body.
std::array<std::uint64_t, 2> tag_of(const CipherKey& key, std::uint64_t nonce, const Bytes& body) {
    std::uint64_t h0 = key_fingerprint(key, 0x7461672d6c6f7730ull) ^ mix64(nonce);
    std::uint64_t h1 = key_fingerprint(key, 0x7461672d68697731ull) ^ mix64(~nonce);
    for (std::size_t i = 0; i < body.size(); ++i) {
        h0 = mix64(h0 ^ (static_cast<std::uint64_t>(body[i]) + i));
        h1 = mix64(h1 + (static_cast<std::uint64_t>(body[i]) << 1) + i);
    }
    h0 = mix64(h0 ^ body.size());
    h1 = mix64(h1 ^ (body.size() << 32));
    return {h0, h1};
}

void xor_keystream(const CipherKey& key, std::uint64_t nonce, Bytes& body) {
    Rng stream(key_fingerprint(key, 0x73747265616d3030ull) ^ mix64(nonce));
    std::size_t i = 0;
    while (i < body.size()) {
        std::uint64_t block = stream.next_u64();
        for (int j = 0; j < 8 && i < body.size(); ++j, ++i) {
            body[i] ^= static_cast<std::uint8_t>(block >> (8 * j));
        }
    }
}

} // namespace

CipherKey make_cipher_key(std::uint64_t id, Rng& rng) {
    CipherKey key;
    key.id = id;
    for (std::size_t i = 0; i < key.material.size(); i += 8) {
        std::uint64_t word = rng.next_u64();
        for (std::size_t j = 0; j < 8; ++j) {
            key.material[i + j] = static_cast<std::uint8_t>(word >> (8 * j));
        }
    }
    return key;
}

Bytes KeyedStreamCipher::encrypt(const CipherKey& key, std::uint64_t nonce, const Bytes& plaintext) const {
    Bytes body = plaintext;
    xor_keystream(key, nonce, body);

    ByteWriter w;
    w.put_u64(nonce);
    w.put_u64(body.size());
    Bytes out = w.take();
    out.insert(out.end(), body.begin(), body.end());
    const auto tag = tag_of(key, nonce, body);
    ByteWriter tw;
    tw.put_u64(tag[0]);
    tw.put_u64(tag[1]);
    const Bytes tb = tw.take();
    out.insert(out.end(), tb.begin(), tb.end());
    return out;
}

Bytes KeyedStreamCipher::decrypt(const CipherKey& key, const Bytes& ciphertext) const {
    if (ciphertext.size() < kNonceBytes + kLenBytes + kTagBytes) {
        throw AuthenticationError();
    }
    ByteReader r(ciphertext);
    const std::uint64_t nonce = r.get_u64();
    const std::uint64_t len = r.get_u64();
    if (ciphertext.size() != kNonceBytes + kLenBytes + len + kTagBytes) {
        throw AuthenticationError();
    }
    Bytes body(ciphertext.begin() + static_cast<std::ptrdiff_t>(kNonceBytes + kLenBytes),
               ciphertext.end() - static_cast<std::ptrdiff_t>(kTagBytes));
    const auto expect = tag_of(key, nonce, body);
    std::uint64_t got0 = 0;
    std::uint64_t got1 = 0;
    for (std::size_t j = 0; j < 8; ++j) {
        got0 |= static_cast<std::uint64_t>(ciphertext[ciphertext.size() - 16 + j]) << (8 * j);
        got1 |= static_cast<std::uint64_t>(ciphertext[ciphertext.size() - 8 + j]) << (8 * j);
    }
    if (got0 != expect[0] || got1 != expect[1]) {
        throw AuthenticationError();
    }
    xor_keystream(key, nonce, body);
    return body;
}

const ClassicalCipher& default_cipher() {
    static const KeyedStreamCipher cipher;
    return cipher;
}

} // namespace ceqss
