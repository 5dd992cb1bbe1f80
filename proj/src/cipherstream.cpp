#include "photostamp/cipherstream.hpp"

#include <cstring>
#include <memory>

#include <openssl/evp.h>

#include "photostamp/errors.hpp"

namespace photostamp {

namespace {

constexpr std::size_t kMaxCameraIdBytes = 256;
// Domain separation tag for the dimension-bound nonce.
constexpr char kNonceTag[] = "photostamp-v1";

void append_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::array<std::uint8_t, 32> sha256_of_string(const std::string& s) {
    return sha256(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

} // namespace

CameraIdentity::CameraIdentity(std::string value) : id(std::move(value)) {
    if (id.empty()) throw EmptyCameraId("camera identity must be non-empty");
    if (id.size() > kMaxCameraIdBytes) throw Error("camera identity exceeds 256 bytes");
}

bool is_valid_photo_id(const std::string& hex) {
    if (hex.size() != 16) return false;
    for (char c : hex) {
        const bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
        if (!ok) return false;
    }
    return true;
}

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
    std::array<std::uint8_t, 32> digest{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32)
        throw Error("SHA-256 computation failed");
    return digest;
}

SymmetricKey derive_key(const CameraIdentity& cam) {
    if (cam.id.empty()) throw EmptyCameraId("camera identity must be non-empty");
    const auto digest = sha256_of_string(cam.id);
    SymmetricKey key;
    std::memcpy(key.bytes.data(), digest.data(), key.bytes.size());
    return key;
}

PhotoId photo_id(const CameraIdentity& cam) {
    if (cam.id.empty()) throw EmptyCameraId("camera identity must be non-empty");
    const auto digest = sha256_of_string(cam.id);
    static const char* hexdigits = "0123456789abcdef";
    std::string hex;
    hex.reserve(16);
    for (std::size_t i = 24; i < 32; ++i) {
        hex.push_back(hexdigits[digest[i] >> 4]);
        hex.push_back(hexdigits[digest[i] & 0x0f]);
    }
    return PhotoId{std::move(hex)};
}

std::vector<std::uint8_t> cipher_plane(std::span<const std::uint8_t> plane, const SymmetricKey& key,
                                       int width, int height) {
    if (width < 1 || height < 1) throw Error("cipher_plane: dimensions must be >= 1");
    const std::size_t expected = static_cast<std::size_t>(width) * height;
    if (plane.size() != expected) throw LengthMismatch("cipher_plane: plane length != width * height");

    // Counter block = 12-byte dimension-bound nonce || 32-bit counter from 0.
    std::vector<std::uint8_t> nonce_input(kNonceTag, kNonceTag + sizeof(kNonceTag) - 1);
    append_be32(nonce_input, static_cast<std::uint32_t>(width));
    append_be32(nonce_input, static_cast<std::uint32_t>(height));
    const auto nonce_digest = sha256(nonce_input);

    std::uint8_t iv[16] = {0};
    std::memcpy(iv, nonce_digest.data(), 12);

    std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(),
                                                                        EVP_CIPHER_CTX_free);
    if (!ctx) throw Error("cipher_plane: failed to allocate cipher context");
    if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ctr(), nullptr, key.bytes.data(), iv) != 1)
        throw Error("cipher_plane: AES-128-CTR init failed");

    std::vector<std::uint8_t> out(plane.size());
    int outl = 0;
    if (EVP_EncryptUpdate(ctx.get(), out.data(), &outl, plane.data(), static_cast<int>(plane.size())) != 1 ||
        static_cast<std::size_t>(outl) != plane.size())
        throw Error("cipher_plane: AES-128-CTR update failed");
    return out;
}

} // namespace photostamp
