#include "photostamp/frequency.hpp"

#include <cmath>
#include <numbers>

#include "photostamp/errors.hpp"

namespace photostamp {

namespace {

// cos_table[u][x] = alpha(u) * cos((2x+1) u pi / 16), the orthonormal 1-D basis.
struct DctTables {
    double basis[8][8];

    DctTables() {
        const double pi = std::numbers::pi;
        for (int u = 0; u < 8; ++u) {
            const double alpha = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int x = 0; x < 8; ++x) basis[u][x] = alpha * std::cos((2 * x + 1) * u * pi / 16.0);
        }
    }
};

const DctTables& tables() {
    static const DctTables t;
    return t;
}

void check_embed_args(const RgbImage& img, CoeffSelector sel, ChannelRoles roles) {
    if (img.width < 1 || img.height < 1 || img.pixels.size() != img.pixel_count() * 3)
        throw Error("invalid image");
    if (img.width < 8 || img.height < 8)
        throw ImageTooSmall("frequency embedding needs at least one complete 8x8 block");
    if (sel.row < 1 || sel.row > 8 || sel.col < 1 || sel.col > 8)
        throw Error("coefficient selector indices must be in [1,8]");
    if (roles.modifier == roles.modified) throw Error("modifier and modified channels must differ");
}

void load_block(const std::vector<std::uint8_t>& plane, int width, int bx, int by,
                std::array<double, 64>& out) {
    for (int y = 0; y < 8; ++y) {
        const std::size_t row = static_cast<std::size_t>(by * 8 + y) * width + bx * 8;
        for (int x = 0; x < 8; ++x) out[y * 8 + x] = plane[row + x];
    }
}

} // namespace

DctBlock dct8_forward(const std::array<double, 64>& samples) {
    const auto& t = tables();
    // Rows first, then columns (separable).
    double tmp[64];
    for (int y = 0; y < 8; ++y) {
        for (int u = 0; u < 8; ++u) {
            double s = 0;
            for (int x = 0; x < 8; ++x) s += samples[y * 8 + x] * t.basis[u][x];
            tmp[y * 8 + u] = s;
        }
    }
    DctBlock out{};
    for (int u = 0; u < 8; ++u) {
        for (int v = 0; v < 8; ++v) {
            double s = 0;
            for (int y = 0; y < 8; ++y) s += tmp[y * 8 + v] * t.basis[u][y];
            out[u * 8 + v] = s;
        }
    }
    return out;
}

std::array<double, 64> dct8_inverse(const DctBlock& coeffs) {
    const auto& t = tables();
    double tmp[64];
    for (int u = 0; u < 8; ++u) {
        for (int x = 0; x < 8; ++x) {
            double s = 0;
            for (int v = 0; v < 8; ++v) s += coeffs[u * 8 + v] * t.basis[v][x];
            tmp[u * 8 + x] = s;
        }
    }
    std::array<double, 64> out{};
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
            double s = 0;
            for (int u = 0; u < 8; ++u) s += tmp[u * 8 + x] * t.basis[u][y];
            out[y * 8 + x] = s;
        }
    }
    return out;
}

RgbImage embed_frequency(const RgbImage& img, const SymmetricKey& key, CoeffSelector sel, ChannelRoles roles) {
    check_embed_args(img, sel, roles);
    const auto ciphered = cipher_plane(channel_plane(img, roles.modifier), key, img.width, img.height);

    RgbImage out = img;
    const int blocks_x = img.width / 8;
    const int blocks_y = img.height / 8;
    const int coeff = (sel.row - 1) * 8 + (sel.col - 1);
    const int mod = static_cast<int>(roles.modified);
    const auto modified_plane = channel_plane(img, roles.modified);

    std::array<double, 64> block{};
    std::array<double, 64> cip_block{};
    for (int by = 0; by < blocks_y; ++by) {
        for (int bx = 0; bx < blocks_x; ++bx) {
            load_block(modified_plane, img.width, bx, by, block);
            load_block(ciphered, img.width, bx, by, cip_block);
            DctBlock c = dct8_forward(block);
            const DctBlock cc = dct8_forward(cip_block);
            c[coeff] = cc[coeff];
            const auto rec = dct8_inverse(c);
            for (int y = 0; y < 8; ++y) {
                for (int x = 0; x < 8; ++x) {
                    double v = rec[y * 8 + x];
                    v = v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v);
                    out.pixels[3 * (static_cast<std::size_t>(by * 8 + y) * img.width + bx * 8 + x) + mod] =
                        static_cast<std::uint8_t>(std::lround(v));
                }
            }
        }
    }
    return out;
}

MismatchMap mismatch_frequency(const RgbImage& img, const SymmetricKey& key, CoeffSelector sel,
                               ChannelRoles roles, double tol) {
    check_embed_args(img, sel, roles);
    if (tol < 0) throw Error("tolerance must be >= 0");
    const auto ciphered = cipher_plane(channel_plane(img, roles.modifier), key, img.width, img.height);
    const auto modified_plane = channel_plane(img, roles.modified);

    MismatchMap map;
    map.width = img.width;
    map.height = img.height;
    map.granularity = MapGranularity::Block8;
    const int blocks_x = img.width / 8;
    const int blocks_y = img.height / 8;
    map.flags.assign(static_cast<std::size_t>(blocks_x) * blocks_y, 0);
    map.low_confidence.assign(map.flags.size(), 0);

    const int coeff = (sel.row - 1) * 8 + (sel.col - 1);
    std::array<double, 64> block{};
    std::array<double, 64> cip_block{};
    for (int by = 0; by < blocks_y; ++by) {
        for (int bx = 0; bx < blocks_x; ++bx) {
            load_block(modified_plane, img.width, bx, by, block);
            load_block(ciphered, img.width, bx, by, cip_block);
            const double got = dct8_forward(block)[coeff];
            const double expected = dct8_forward(cip_block)[coeff];
            if (std::abs(got - expected) <= tol) continue;

            bool saturated = false;
            for (int i = 0; i < 64 && !saturated; ++i)
                saturated = block[i] == 0.0 || block[i] == 255.0;
            const std::size_t cell = static_cast<std::size_t>(by) * blocks_x + bx;
            if (saturated)
                map.low_confidence[cell] = 1;
            else
                map.flags[cell] = 1;
        }
    }
    return map;
}

} // namespace photostamp
