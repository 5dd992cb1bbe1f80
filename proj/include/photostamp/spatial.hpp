#pragma once

#include <cstdint>
#include <vector>

#include "photostamp/cipherstream.hpp"
#include "photostamp/image.hpp"

namespace photostamp {

// Bit position within a channel byte, 0 = least significant.
struct BitPlane {
    int index = 0;

    static constexpr BitPlane lsb() { return BitPlane{0}; }
    static constexpr BitPlane fourth_bit() { return BitPlane{3}; }
    static constexpr BitPlane msb() { return BitPlane{7}; }

    friend bool operator==(const BitPlane& a, const BitPlane& b) { return a.index == b.index; }
};

// Which channel supplies the identifier bits (modifier, never altered) and
// which one stores them (modified).
struct ChannelRoles {
    ChannelId modifier = ChannelId::Blue;
    ChannelId modified = ChannelId::Red;
};

enum class MapGranularity { Pixel, Block8 };

// Per-pixel or per-8x8-block verification outcome. For Block8 maps,
// low_confidence marks blocks whose coefficient residual exceeded tolerance
// but that contain saturated samples, where embedding itself may have clamped.
struct MismatchMap {
    int width = 0;  // image dimensions, not cell counts
    int height = 0;
    MapGranularity granularity = MapGranularity::Pixel;
    std::vector<std::uint8_t> flags;
    std::vector<std::uint8_t> low_confidence;

    int cells_x() const { return granularity == MapGranularity::Pixel ? width : width / 8; }
    int cells_y() const { return granularity == MapGranularity::Pixel ? height : height / 8; }
    std::size_t flagged_count() const;
    std::size_t low_confidence_count() const;
    double flagged_ratio() const;
};

// Replaces bit `plane` of the modified channel with the matching bit of the
// ciphered modifier plane. Modifier and third channel stay bit-identical.
RgbImage embed_spatial(const RgbImage& img, const SymmetricKey& key, BitPlane plane, ChannelRoles roles);

MismatchMap mismatch_spatial(const RgbImage& img, const SymmetricKey& key, BitPlane plane, ChannelRoles roles);

} // namespace photostamp
