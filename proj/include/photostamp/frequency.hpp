#pragma once

#include <array>

#include "photostamp/cipherstream.hpp"
#include "photostamp/image.hpp"
#include "photostamp/spatial.hpp"

namespace photostamp {

// 1-based coefficient position within an 8x8 DCT block, (1,1) = DC.
struct CoeffSelector {
    int row = 1;
    int col = 1;

    static constexpr CoeffSelector dc() { return {1, 1}; }
    static constexpr CoeffSelector first_ac() { return {1, 2}; }
    static constexpr CoeffSelector mid_ac() { return {4, 4}; }
    static constexpr CoeffSelector last_ac() { return {8, 8}; }

    friend bool operator==(const CoeffSelector& a, const CoeffSelector& b) {
        return a.row == b.row && a.col == b.col;
    }
};

using DctBlock = std::array<double, 64>;

// Orthonormal 2-D DCT-II over an 8x8 block (row-major samples).
DctBlock dct8_forward(const std::array<double, 64>& samples);
std::array<double, 64> dct8_inverse(const DctBlock& coeffs);

// Per complete 8x8 block: replace coefficient `sel` of the modified channel
// with the same coefficient of the ciphered modifier plane, then write back
// round(clamp(idct, 0, 255)). Trailing partial blocks are left untouched.
RgbImage embed_frequency(const RgbImage& img, const SymmetricKey& key, CoeffSelector sel, ChannelRoles roles);

// Block flagged iff the coefficient residual exceeds tol and the block shows
// no saturated modified-channel samples; saturated over-tolerance blocks are
// reported as low-confidence instead (embedding clamping is indistinguishable
// from tamper there).
MismatchMap mismatch_frequency(const RgbImage& img, const SymmetricKey& key, CoeffSelector sel,
                               ChannelRoles roles, double tol);

} // namespace photostamp
