#include "photostamp/image.hpp"

#include <algorithm>

#include "photostamp/errors.hpp"

namespace photostamp {

const char* to_string(ChannelId ch) {
    switch (ch) {
    case ChannelId::Red: return "red";
    case ChannelId::Green: return "green";
    case ChannelId::Blue: return "blue";
    }
    return "?";
}

ChannelId channel_from_string(const std::string& name) {
    if (name == "red" || name == "r") return ChannelId::Red;
    if (name == "green" || name == "g") return ChannelId::Green;
    if (name == "blue" || name == "b") return ChannelId::Blue;
    throw Error("unknown channel name: " + name);
}

RgbImage::RgbImage(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) throw Error("image dimensions must be >= 1");
    pixels.assign(static_cast<std::size_t>(3) * w * h, 0);
}

RgbImage RgbImage::filled(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    RgbImage img(w, h);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        img.pixels[3 * i + 0] = r;
        img.pixels[3 * i + 1] = g;
        img.pixels[3 * i + 2] = b;
    }
    return img;
}

bool rects_intersect(const Rect& a, const Rect& b) {
    return a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h && b.y < a.y + a.h;
}

Rect rect_union_bounds(const Rect& a, const Rect& b) {
    if (a.w == 0 || a.h == 0) return b;
    if (b.w == 0 || b.h == 0) return a;
    const int x0 = std::min(a.x, b.x);
    const int y0 = std::min(a.y, b.y);
    const int x1 = std::max(a.x + a.w, b.x + b.w);
    const int y1 = std::max(a.y + a.h, b.y + b.h);
    return Rect{x0, y0, x1 - x0, y1 - y0};
}

double rect_iou(const Rect& a, const Rect& b) {
    if (!rects_intersect(a, b)) return 0.0;
    const int x0 = std::max(a.x, b.x);
    const int y0 = std::max(a.y, b.y);
    const int x1 = std::min(a.x + a.w, b.x + b.w);
    const int y1 = std::min(a.y + a.h, b.y + b.h);
    const double inter = static_cast<double>(x1 - x0) * (y1 - y0);
    const double uni = static_cast<double>(a.area()) + static_cast<double>(b.area()) - inter;
    return uni > 0 ? inter / uni : 0.0;
}

std::vector<std::uint8_t> channel_plane(const RgbImage& img, ChannelId ch) {
    std::vector<std::uint8_t> plane(img.pixel_count());
    const int c = static_cast<int>(ch);
    for (std::size_t i = 0; i < plane.size(); ++i) plane[i] = img.pixels[3 * i + c];
    return plane;
}

void set_channel_plane(RgbImage& img, ChannelId ch, std::span<const std::uint8_t> plane) {
    if (plane.size() != img.pixel_count()) throw LengthMismatch("channel plane size does not match image");
    const int c = static_cast<int>(ch);
    for (std::size_t i = 0; i < plane.size(); ++i) img.pixels[3 * i + c] = plane[i];
}

} // namespace photostamp
