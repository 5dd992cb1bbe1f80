#include "photostamp/tamper.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "photostamp/errors.hpp"
#include "photostamp/imageio.hpp"

namespace photostamp {

using nlohmann::json;

namespace {

constexpr const char* kScenarioNames[] = {
    "identity",        "copy_move_internal", "splice_external",  "region_fill_constant",
    "text_overlay",    "crop",               "resize",           "rotate90",
    "flip_horizontal", "jpeg_recompress_q90", "gaussian_noise",  "gaussian_blur",
    "brightness_plus10", "contrast_stretch", "channel_swap_rb",  "single_pixel_edit",
    "histogram_equalize",
};

std::uint8_t clamp_byte(double v) {
    return static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : std::lround(v)));
}

void check_region(const RgbImage& img, const Rect& r) {
    if (r.w < 1 || r.h < 1 || r.x < 0 || r.y < 0 || r.x + r.w > img.width || r.y + r.h > img.height)
        throw RegionOutOfBounds("tamper region outside image bounds");
}

Rect default_region(const RgbImage& img, int size) {
    const int s = std::min({size, img.width, img.height});
    return Rect{img.width / 4, img.height / 4, s, s};
}

// 5x7 glyphs, one string per row.
const std::map<char, std::array<const char*, 7>>& font() {
    static const std::map<char, std::array<const char*, 7>> glyphs = {
        {'F', {"11111", "10000", "10000", "11110", "10000", "10000", "10000"}},
        {'A', {"01110", "10001", "10001", "11111", "10001", "10001", "10001"}},
        {'K', {"10001", "10010", "10100", "11000", "10100", "10010", "10001"}},
        {'E', {"11111", "10000", "10000", "11110", "10000", "10000", "11111"}},
        {'X', {"10001", "10001", "01010", "00100", "01010", "10001", "10001"}},
    };
    return glyphs;
}

TamperResult copy_move(const RgbImage& img, const TamperSpec& spec) {
    const int s = std::clamp(std::min(img.width, img.height) / 5, 4, 48);
    Rect src{img.width / 10, img.height / 10, s, s};
    Rect dst = spec.region.value_or(Rect{img.width - s - img.width / 10, img.height - s - img.height / 10, s, s});
    dst.w = src.w;
    dst.h = src.h;
    check_region(img, src);
    check_region(img, dst);
    TamperResult res{img, {dst}, false};
    for (int y = 0; y < src.h; ++y)
        for (int x = 0; x < src.w; ++x)
            for (int c = 0; c < 3; ++c)
                res.image.at(dst.x + x, dst.y + y, static_cast<ChannelId>(c)) =
                    img.at(src.x + x, src.y + y, static_cast<ChannelId>(c));
    return res;
}

TamperResult splice(const RgbImage& img, const TamperSpec& spec) {
    const Rect r = spec.region.value_or(default_region(img, 48));
    check_region(img, r);
    std::mt19937_64 rng(spec.seed ^ 0x5011CE0ULL);
    std::uniform_int_distribution<int> noise(-18, 18);
    TamperResult res{img, {r}, false};
    // Foreign content: a smooth diagonal ramp with grain, unrelated to the host.
    for (int y = 0; y < r.h; ++y) {
        for (int x = 0; x < r.w; ++x) {
            const double base = 40.0 + 170.0 * (x + y) / static_cast<double>(r.w + r.h);
            res.image.at(r.x + x, r.y + y, ChannelId::Red) = clamp_byte(base + noise(rng));
            res.image.at(r.x + x, r.y + y, ChannelId::Green) = clamp_byte(base * 0.8 + noise(rng));
            res.image.at(r.x + x, r.y + y, ChannelId::Blue) = clamp_byte(base * 0.6 + 30 + noise(rng));
        }
    }
    return res;
}

TamperResult region_fill(const RgbImage& img, const TamperSpec& spec) {
    const Rect r = spec.region.value_or(default_region(img, 32));
    check_region(img, r);
    TamperResult res{img, {r}, false};
    for (int y = r.y; y < r.y + r.h; ++y)
        for (int x = r.x; x < r.x + r.w; ++x)
            for (int c = 0; c < 3; ++c)
                res.image.at(x, y, static_cast<ChannelId>(c)) = spec.fill_value;
    return res;
}

TamperResult text_overlay(const RgbImage& img, const TamperSpec& spec) {
    const int scale = 3;
    const int x0 = spec.region ? spec.region->x : img.width / 6;
    const int y0 = spec.region ? spec.region->y : img.height / 6;
    const int glyph_w = 6 * scale; // 5 columns + 1 spacing
    const int text_w = static_cast<int>(spec.text.size()) * glyph_w;
    const int text_h = 7 * scale;
    const Rect bbox{x0, y0, text_w, text_h};
    check_region(img, bbox);
    TamperResult res{img, {bbox}, false};
    for (std::size_t i = 0; i < spec.text.size(); ++i) {
        const char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(spec.text[i])));
        const auto it = font().find(ch);
        for (int gy = 0; gy < 7; ++gy) {
            for (int gx = 0; gx < 5; ++gx) {
                const bool on = it != font().end() ? it->second[gy][gx] == '1' : true;
                if (!on) continue;
                for (int sy = 0; sy < scale; ++sy)
                    for (int sx = 0; sx < scale; ++sx) {
                        const int px = x0 + static_cast<int>(i) * glyph_w + gx * scale + sx;
                        const int py = y0 + gy * scale + sy;
                        res.image.at(px, py, ChannelId::Red) = 255;
                        res.image.at(px, py, ChannelId::Green) = 255;
                        res.image.at(px, py, ChannelId::Blue) = 255;
                    }
            }
        }
    }
    return res;
}

TamperResult crop(const RgbImage& img, const TamperSpec& spec) {
    const int inset = 16;
    Rect r = spec.region.value_or(Rect{inset, inset, img.width - 2 * inset, img.height - 2 * inset});
    if (r.w < 1 || r.h < 1) throw ImageTooSmall("image too small to crop");
    check_region(img, r);
    RgbImage out(r.w, r.h);
    out.metadata = img.metadata;
    for (int y = 0; y < r.h; ++y)
        for (int x = 0; x < r.w; ++x)
            for (int c = 0; c < 3; ++c)
                out.at(x, y, static_cast<ChannelId>(c)) = img.at(r.x + x, r.y + y, static_cast<ChannelId>(c));
    return TamperResult{std::move(out), {}, true};
}

TamperResult resize_bilinear(const RgbImage& img, const TamperSpec&) {
    const int nw = std::max(1, img.width * 3 / 4);
    const int nh = std::max(1, img.height * 3 / 4);
    RgbImage out(nw, nh);
    out.metadata = img.metadata;
    for (int y = 0; y < nh; ++y) {
        const double fy = (y + 0.5) * img.height / nh - 0.5;
        const int y0 = std::clamp(static_cast<int>(std::floor(fy)), 0, img.height - 1);
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double wy = fy - y0;
        for (int x = 0; x < nw; ++x) {
            const double fx = (x + 0.5) * img.width / nw - 0.5;
            const int x0 = std::clamp(static_cast<int>(std::floor(fx)), 0, img.width - 1);
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double wx = fx - x0;
            for (int c = 0; c < 3; ++c) {
                const auto ch = static_cast<ChannelId>(c);
                const double v = (1 - wy) * ((1 - wx) * img.at(x0, y0, ch) + wx * img.at(x1, y0, ch)) +
                                 wy * ((1 - wx) * img.at(x0, y1, ch) + wx * img.at(x1, y1, ch));
                out.at(x, y, ch) = clamp_byte(v);
            }
        }
    }
    return TamperResult{std::move(out), {}, true};
}

TamperResult rotate90(const RgbImage& img, const TamperSpec&) {
    RgbImage out(img.height, img.width); // clockwise: dimensions swap
    out.metadata = img.metadata;
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            for (int c = 0; c < 3; ++c)
                out.at(x, y, static_cast<ChannelId>(c)) =
                    img.at(y, img.height - 1 - x, static_cast<ChannelId>(c));
    return TamperResult{std::move(out), {}, true};
}

TamperResult flip_horizontal(const RgbImage& img, const TamperSpec&) {
    TamperResult res{img, {}, false};
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c)
                res.image.at(x, y, static_cast<ChannelId>(c)) =
                    img.at(img.width - 1 - x, y, static_cast<ChannelId>(c));
    return res;
}

TamperResult jpeg_recompress(const RgbImage& img, const TamperSpec& spec) {
    const auto bytes = encode_jpeg(img, spec.jpeg_quality);
    RgbImage out = decode_jpeg(bytes);
    out.metadata = img.metadata;
    return TamperResult{std::move(out), {}, false};
}

TamperResult gaussian_noise(const RgbImage& img, const TamperSpec& spec) {
    const double sigma = spec.sigma > 0 ? spec.sigma : 2.0;
    std::mt19937_64 rng(spec.seed ^ 0xB0153ULL);
    std::normal_distribution<double> noise(0.0, sigma);
    TamperResult res{img, {}, false};
    for (auto& v : res.image.pixels) v = clamp_byte(v + noise(rng));
    return res;
}

TamperResult gaussian_blur(const RgbImage& img, const TamperSpec& spec) {
    const double sigma = spec.sigma > 0 ? spec.sigma : 1.0;
    const int radius = std::max(1, static_cast<int>(std::ceil(3 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
        sum += kernel[i + radius];
    }
    for (auto& k : kernel) k /= sum;

    const auto reflect = [](int v, int n) { return std::clamp(v, 0, n - 1); };
    RgbImage tmp = img;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c) {
                double acc = 0;
                for (int t = -radius; t <= radius; ++t)
                    acc += kernel[t + radius] * img.at(reflect(x + t, img.width), y, static_cast<ChannelId>(c));
                tmp.at(x, y, static_cast<ChannelId>(c)) = clamp_byte(acc);
            }
    TamperResult res{img, {}, false};
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c) {
                double acc = 0;
                for (int t = -radius; t <= radius; ++t)
                    acc += kernel[t + radius] * tmp.at(x, reflect(y + t, img.height), static_cast<ChannelId>(c));
                res.image.at(x, y, static_cast<ChannelId>(c)) = clamp_byte(acc);
            }
    return res;
}

TamperResult brightness(const RgbImage& img, const TamperSpec&) {
    TamperResult res{img, {}, false};
    for (auto& v : res.image.pixels) v = static_cast<std::uint8_t>(std::min(255, v + 10));
    return res;
}

TamperResult contrast_stretch(const RgbImage& img, const TamperSpec&) {
    TamperResult res{img, {}, false};
    for (auto& v : res.image.pixels) v = clamp_byte((v - 128.0) * 1.25 + 128.0);
    return res;
}

TamperResult channel_swap_rb(const RgbImage& img, const TamperSpec&) {
    TamperResult res{img, {}, false};
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        std::swap(res.image.pixels[3 * i + 0], res.image.pixels[3 * i + 2]);
    return res;
}

TamperResult single_pixel_edit(const RgbImage& img, const TamperSpec& spec) {
    std::mt19937_64 rng(spec.seed ^ 0x51E9ULL);
    std::uniform_int_distribution<int> dx(0, img.width - 1), dy(0, img.height - 1), dv(0, 255);
    const int x = dx(rng), y = dy(rng);
    TamperResult res{img, {Rect{x, y, 1, 1}}, false};
    // Redraw the whole pixel; make sure it actually changes.
    while (true) {
        const std::uint8_t r = static_cast<std::uint8_t>(dv(rng));
        const std::uint8_t g = static_cast<std::uint8_t>(dv(rng));
        const std::uint8_t b = static_cast<std::uint8_t>(dv(rng));
        if (r == img.at(x, y, ChannelId::Red) && g == img.at(x, y, ChannelId::Green) &&
            b == img.at(x, y, ChannelId::Blue))
            continue;
        res.image.at(x, y, ChannelId::Red) = r;
        res.image.at(x, y, ChannelId::Green) = g;
        res.image.at(x, y, ChannelId::Blue) = b;
        break;
    }
    return res;
}

TamperResult histogram_equalize(const RgbImage& img, const TamperSpec&) {
    TamperResult res{img, {}, false};
    const std::size_t n = img.pixel_count();
    for (int c = 0; c < 3; ++c) {
        std::array<std::size_t, 256> hist{};
        for (std::size_t i = 0; i < n; ++i) ++hist[img.pixels[3 * i + c]];
        std::array<double, 256> lut{};
        std::size_t cum = 0, cdf_min = 0;
        for (std::size_t v = 0; v < 256; ++v) {
            if (hist[v] != 0) {
                cdf_min = hist[v];
                break;
            }
        }
        for (int v = 0; v < 256; ++v) {
            cum += hist[v];
            const double denom = static_cast<double>(n - cdf_min);
            lut[v] = denom > 0 ? 255.0 * (static_cast<double>(cum) - cdf_min) / denom : 0.0;
        }
        for (std::size_t i = 0; i < n; ++i)
            res.image.pixels[3 * i + c] = clamp_byte(lut[img.pixels[3 * i + c]]);
    }
    return res;
}

} // namespace

const char* to_string(TamperScenario s) { return kScenarioNames[static_cast<int>(s)]; }

TamperScenario scenario_from_string(const std::string& name) {
    for (int i = 0; i < static_cast<int>(std::size(kScenarioNames)); ++i)
        if (name == kScenarioNames[i]) return static_cast<TamperScenario>(i);
    throw Error("unknown tamper scenario: " + name);
}

const std::vector<TamperScenario>& manipulation_scenarios() {
    static const std::vector<TamperScenario> all = [] {
        std::vector<TamperScenario> v;
        for (int i = 1; i <= static_cast<int>(TamperScenario::HistogramEqualize); ++i)
            v.push_back(static_cast<TamperScenario>(i));
        return v;
    }();
    return all;
}

std::vector<TamperSpec> default_scenarios(std::uint64_t seed) {
    std::vector<TamperSpec> specs;
    for (TamperScenario s : manipulation_scenarios()) {
        TamperSpec spec;
        spec.name = s;
        spec.seed = seed + static_cast<std::uint64_t>(s);
        specs.push_back(spec);
    }
    return specs;
}

TamperResult apply_tamper(const RgbImage& img, const TamperSpec& spec) {
    if (img.width < 1 || img.height < 1 || img.pixels.size() != img.pixel_count() * 3)
        throw Error("invalid image");
    switch (spec.name) {
    case TamperScenario::Identity: return TamperResult{img, {}, false};
    case TamperScenario::CopyMoveInternal: return copy_move(img, spec);
    case TamperScenario::SpliceExternal: return splice(img, spec);
    case TamperScenario::RegionFillConstant: return region_fill(img, spec);
    case TamperScenario::TextOverlay: return text_overlay(img, spec);
    case TamperScenario::Crop: return crop(img, spec);
    case TamperScenario::Resize: return resize_bilinear(img, spec);
    case TamperScenario::Rotate90: return rotate90(img, spec);
    case TamperScenario::FlipHorizontal: return flip_horizontal(img, spec);
    case TamperScenario::JpegRecompressQ90: return jpeg_recompress(img, spec);
    case TamperScenario::GaussianNoise: return gaussian_noise(img, spec);
    case TamperScenario::GaussianBlur: return gaussian_blur(img, spec);
    case TamperScenario::BrightnessPlus10: return brightness(img, spec);
    case TamperScenario::ContrastStretch: return contrast_stretch(img, spec);
    case TamperScenario::ChannelSwapRB: return channel_swap_rb(img, spec);
    case TamperScenario::SinglePixelEdit: return single_pixel_edit(img, spec);
    case TamperScenario::HistogramEqualize: return histogram_equalize(img, spec);
    }
    throw Error("unknown tamper scenario");
}

DetectionTable run_detection_bench(const std::vector<std::pair<std::string, RgbImage>>& images,
                                   const std::vector<std::pair<std::string, StampConfig>>& techniques,
                                   const std::vector<TamperSpec>& scenarios,
                                   const CameraIdentity& cam) {
    if (images.empty() || techniques.empty()) throw Error("detection bench needs images and techniques");
    DetectionTable table;
    for (const auto& [img_name, img] : images) {
        for (const auto& [tech_name, cfg] : techniques) {
            const RgbImage stamped = stamp(img, cam, cfg);

            auto run_row = [&](const TamperSpec& spec) {
                DetectionRow row;
                row.image = img_name;
                row.technique = tech_name;
                row.scenario = to_string(spec.name);
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    const TamperResult tampered = apply_tamper(stamped, spec);
                    const ForgeryReport report = verify(tampered.image, cam, cfg);
                    row.verdict = report.verdict;
                    row.flagged_ratio = report.flagged_ratio;
                    row.dims_changed = tampered.dims_changed;
                    if (!tampered.dims_changed && !tampered.truth_region.empty() &&
                        report.flagged_ratio > 0) {
                        Rect truth{};
                        for (const auto& r : tampered.truth_region) truth = rect_union_bounds(truth, r);
                        row.iou = rect_iou(flagged_bounding_box(report.map), truth);
                    }
                } catch (const std::exception& e) {
                    row.verdict = Verdict::Error;
                    row.error = e.what();
                }
                row.runtime_ms = std::chrono::duration<double, std::milli>(
                                     std::chrono::steady_clock::now() - t0)
                                     .count();
                table.rows.push_back(std::move(row));
            };

            TamperSpec control;
            control.name = TamperScenario::Identity;
            run_row(control);
            for (const auto& spec : scenarios) run_row(spec);
        }
    }
    return table;
}

std::string DetectionTable::to_json() const {
    json j;
    j["rows"] = json::array();
    for (const auto& r : rows) {
        json row;
        row["image"] = r.image;
        row["technique"] = r.technique;
        row["scenario"] = r.scenario;
        row["verdict"] = to_string(r.verdict);
        row["flagged_ratio"] = r.flagged_ratio;
        if (std::isnan(r.iou))
            row["iou"] = nullptr;
        else
            row["iou"] = r.iou;
        row["runtime_ms"] = r.runtime_ms;
        row["dims_changed"] = r.dims_changed;
        if (!r.error.empty()) row["error"] = r.error;
        j["rows"].push_back(std::move(row));
    }
    return j.dump(2);
}

std::string DetectionTable::to_csv() const {
    std::ostringstream os;
    os << "image,technique,scenario,verdict,flagged_ratio,iou,runtime_ms\n";
    os.precision(9);
    for (const auto& r : rows) {
        os << r.image << ',' << r.technique << ',' << r.scenario << ',' << to_string(r.verdict) << ','
           << r.flagged_ratio << ',';
        if (!std::isnan(r.iou)) os << r.iou;
        os << ',' << r.runtime_ms << '\n';
    }
    return os.str();
}

} // namespace photostamp
