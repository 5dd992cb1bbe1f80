#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace photostamp {

enum class ChannelId : int { Red = 0, Green = 1, Blue = 2 };

const char* to_string(ChannelId ch);
ChannelId channel_from_string(const std::string& name);

// 8-bit-per-channel RGB raster, interleaved row-major. The metadata map
// travels with the image and carries the `photo_id` key once stamped.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // size == 3 * width * height
    std::map<std::string, std::string> metadata;

    RgbImage() = default;
    RgbImage(int w, int h);
    static RgbImage filled(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b);

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    std::uint8_t& at(int x, int y, ChannelId ch) {
        return pixels[3 * (static_cast<std::size_t>(y) * width + x) + static_cast<int>(ch)];
    }
    std::uint8_t at(int x, int y, ChannelId ch) const {
        return pixels[3 * (static_cast<std::size_t>(y) * width + x) + static_cast<int>(ch)];
    }

    bool same_pixels(const RgbImage& other) const {
        return width == other.width && height == other.height && pixels == other.pixels;
    }
    friend bool operator==(const RgbImage& a, const RgbImage& b) {
        return a.same_pixels(b) && a.metadata == b.metadata;
    }
};

// Axis-aligned rectangle in pixel coordinates.
struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool contains(int px, int py) const {
        return px >= x && px < x + w && py >= y && py < y + h;
    }
    long long area() const { return static_cast<long long>(w) * h; }
    friend bool operator==(const Rect& a, const Rect& b) {
        return a.x == b.x && a.y == b.y && a.w == b.w && a.h == b.h;
    }
};

bool rects_intersect(const Rect& a, const Rect& b);
Rect rect_union_bounds(const Rect& a, const Rect& b);
double rect_iou(const Rect& a, const Rect& b);

// Copy of one channel as a w*h row-major plane.
std::vector<std::uint8_t> channel_plane(const RgbImage& img, ChannelId ch);
void set_channel_plane(RgbImage& img, ChannelId ch, std::span<const std::uint8_t> plane);

} // namespace photostamp
