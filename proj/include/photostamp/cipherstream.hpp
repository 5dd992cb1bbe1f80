#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace photostamp {

// Camera identity: serial number or MAC-like identifier, 1..256 bytes.
struct CameraIdentity {
    std::string id;

    CameraIdentity() = default;
    explicit CameraIdentity(std::string value);
};

// Public 64-bit hash of the camera identity, as 16 lowercase hex chars.
struct PhotoId {
    std::string hex;

    friend bool operator==(const PhotoId& a, const PhotoId& b) { return a.hex == b.hex; }
    friend auto operator<=>(const PhotoId& a, const PhotoId& b) { return a.hex <=> b.hex; }
};

bool is_valid_photo_id(const std::string& hex);

struct SymmetricKey {
    std::array<std::uint8_t, 16> bytes{};

    friend bool operator==(const SymmetricKey& a, const SymmetricKey& b) { return a.bytes == b.bytes; }
};

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);

// Key = first 16 bytes of SHA-256(id). The photo id uses the last 8 bytes of
// the same digest, so the public id shares no bytes with the key.
SymmetricKey derive_key(const CameraIdentity& cam);
PhotoId photo_id(const CameraIdentity& cam);

// XORs the plane with an AES-128-CTR keystream. The nonce is bound to the
// image dimensions, so two images of different size never share a keystream
// under the same key. Byte-local: ciphertext byte i depends only on plaintext
// byte i (and the key/nonce), which keeps tamper localization pixel-granular.
std::vector<std::uint8_t> cipher_plane(std::span<const std::uint8_t> plane, const SymmetricKey& key,
                                       int width, int height);

} // namespace photostamp
