#include "photostamp/spatial.hpp"

#include <algorithm>

#include "photostamp/errors.hpp"

namespace photostamp {

namespace {

void check_args(const RgbImage& img, BitPlane plane, ChannelRoles roles) {
    if (img.width < 1 || img.height < 1 || img.pixels.size() != img.pixel_count() * 3)
        throw Error("invalid image");
    if (plane.index < 0 || plane.index > 7) throw Error("bit plane index must be in [0,7]");
    if (roles.modifier == roles.modified) throw Error("modifier and modified channels must differ");
}

} // namespace

std::size_t MismatchMap::flagged_count() const {
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), std::uint8_t{1}));
}

std::size_t MismatchMap::low_confidence_count() const {
    return static_cast<std::size_t>(std::count(low_confidence.begin(), low_confidence.end(), std::uint8_t{1}));
}

double MismatchMap::flagged_ratio() const {
    return flags.empty() ? 0.0 : static_cast<double>(flagged_count()) / static_cast<double>(flags.size());
}

RgbImage embed_spatial(const RgbImage& img, const SymmetricKey& key, BitPlane plane, ChannelRoles roles) {
    check_args(img, plane, roles);
    const auto ciphered = cipher_plane(channel_plane(img, roles.modifier), key, img.width, img.height);

    RgbImage out = img;
    const std::uint8_t mask = static_cast<std::uint8_t>(1u << plane.index);
    const int mod = static_cast<int>(roles.modified);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        std::uint8_t& b = out.pixels[3 * i + mod];
        b = static_cast<std::uint8_t>((b & ~mask) | (ciphered[i] & mask));
    }
    return out;
}

MismatchMap mismatch_spatial(const RgbImage& img, const SymmetricKey& key, BitPlane plane, ChannelRoles roles) {
    check_args(img, plane, roles);
    const auto ciphered = cipher_plane(channel_plane(img, roles.modifier), key, img.width, img.height);

    MismatchMap map;
    map.width = img.width;
    map.height = img.height;
    map.granularity = MapGranularity::Pixel;
    map.flags.resize(img.pixel_count());
    const std::uint8_t mask = static_cast<std::uint8_t>(1u << plane.index);
    const int mod = static_cast<int>(roles.modified);
    for (std::size_t i = 0; i < map.flags.size(); ++i)
        map.flags[i] = ((img.pixels[3 * i + mod] ^ ciphered[i]) & mask) ? 1 : 0;
    return map;
}

} // namespace photostamp
