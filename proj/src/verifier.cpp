#include "photostamp/verifier.hpp"

#include <deque>
#include <nlohmann/json.hpp>

#include "photostamp/errors.hpp"

namespace photostamp {

using nlohmann::json;

namespace {

const char* selector_name(CoeffSelector sel) {
    if (sel == CoeffSelector::dc()) return "dc";
    if (sel == CoeffSelector::first_ac()) return "first_ac";
    if (sel == CoeffSelector::mid_ac()) return "mid_ac";
    if (sel == CoeffSelector::last_ac()) return "last_ac";
    return "custom";
}

CoeffSelector selector_from_name(const std::string& name) {
    if (name == "dc") return CoeffSelector::dc();
    if (name == "first_ac" || name == "first-ac") return CoeffSelector::first_ac();
    if (name == "mid_ac" || name == "mid-ac") return CoeffSelector::mid_ac();
    if (name == "last_ac" || name == "last-ac") return CoeffSelector::last_ac();
    throw Error("unknown coefficient selector: " + name);
}

} // namespace

StampConfig StampConfig::from_technique(const std::string& name) {
    StampConfig cfg;
    if (name == "lsb") {
        cfg.domain = Domain::Spatial;
        cfg.plane = BitPlane::lsb();
    } else if (name == "bit4") {
        cfg.domain = Domain::Spatial;
        cfg.plane = BitPlane::fourth_bit();
    } else if (name == "msb") {
        cfg.domain = Domain::Spatial;
        cfg.plane = BitPlane::msb();
    } else if (name == "dc" || name == "first-ac" || name == "mid-ac" || name == "last-ac") {
        cfg.domain = Domain::Frequency;
        cfg.selector = selector_from_name(name);
    } else {
        throw Error("unknown technique: " + name + " (expected lsb|bit4|msb|dc|first-ac|mid-ac|last-ac)");
    }
    return cfg;
}

std::string StampConfig::technique_name() const {
    if (domain == Domain::Spatial) {
        if (plane == BitPlane::lsb()) return "lsb";
        if (plane == BitPlane::fourth_bit()) return "bit4";
        if (plane == BitPlane::msb()) return "msb";
        return "bit" + std::to_string(plane.index);
    }
    const std::string n = selector_name(selector);
    return n == "first_ac" ? "first-ac" : n == "mid_ac" ? "mid-ac" : n == "last_ac" ? "last-ac" : n;
}

std::string StampConfig::to_json() const {
    json j;
    j["domain"] = domain == Domain::Spatial ? "spatial" : "frequency";
    if (domain == Domain::Spatial)
        j["plane"] = plane.index;
    else {
        j["selector"] = selector_name(selector);
        j["tol"] = tol;
    }
    j["roles"] = {{"modifier", to_string(roles.modifier)}, {"modified", to_string(roles.modified)}};
    return j.dump();
}

StampConfig StampConfig::from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(std::string("bad stamp config JSON: ") + e.what());
    }
    StampConfig cfg;
    const std::string domain = j.value("domain", "spatial");
    if (domain == "spatial")
        cfg.domain = Domain::Spatial;
    else if (domain == "frequency")
        cfg.domain = Domain::Frequency;
    else
        throw Error("bad stamp config: domain must be spatial or frequency");
    if (j.contains("plane")) {
        const int p = j["plane"].get<int>();
        if (p < 0 || p > 7) throw Error("bad stamp config: plane must be in [0,7]");
        cfg.plane = BitPlane{p};
    }
    if (j.contains("selector")) cfg.selector = selector_from_name(j["selector"].get<std::string>());
    if (j.contains("tol")) {
        cfg.tol = j["tol"].get<double>();
        if (cfg.tol < 0) throw Error("bad stamp config: tol must be >= 0");
    }
    if (j.contains("roles")) {
        cfg.roles.modifier = channel_from_string(j["roles"].value("modifier", "blue"));
        cfg.roles.modified = channel_from_string(j["roles"].value("modified", "red"));
        if (cfg.roles.modifier == cfg.roles.modified)
            throw Error("bad stamp config: modifier and modified must differ");
    }
    return cfg;
}

std::vector<std::pair<std::string, StampConfig>> all_techniques() {
    std::vector<std::pair<std::string, StampConfig>> v;
    for (const char* name : {"lsb", "bit4", "msb", "dc", "first-ac", "mid-ac", "last-ac"})
        v.emplace_back(name, StampConfig::from_technique(name));
    return v;
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Authentic: return "authentic";
    case Verdict::Tampered: return "tampered";
    case Verdict::UnknownCamera: return "unknown_camera";
    case Verdict::Error: return "error";
    }
    return "?";
}

RgbImage stamp(const RgbImage& img, const CameraIdentity& cam, const StampConfig& cfg) {
    const SymmetricKey key = derive_key(cam);
    RgbImage out = cfg.domain == Domain::Spatial ? embed_spatial(img, key, cfg.plane, cfg.roles)
                                                 : embed_frequency(img, key, cfg.selector, cfg.roles);
    out.metadata["photo_id"] = photo_id(cam).hex;
    return out;
}

ForgeryReport verify(const RgbImage& img, const CameraIdentity& cam, const StampConfig& cfg) {
    const SymmetricKey key = derive_key(cam);
    ForgeryReport report;
    report.map = cfg.domain == Domain::Spatial
                     ? mismatch_spatial(img, key, cfg.plane, cfg.roles)
                     : mismatch_frequency(img, key, cfg.selector, cfg.roles, cfg.tol);
    report.flagged_ratio = report.map.flagged_ratio();
    report.low_confidence_blocks = static_cast<long>(report.map.low_confidence_count());
    report.regions = connected_regions(report.map);
    if (cfg.domain == Domain::Spatial) {
        report.coverage = 1.0;
    } else {
        const double covered = static_cast<double>(img.width / 8 * 8) * (img.height / 8 * 8);
        report.coverage = covered / (static_cast<double>(img.width) * img.height);
    }
    report.verdict = report.flagged_ratio == 0.0 ? Verdict::Authentic : Verdict::Tampered;
    return report;
}

std::vector<Rect> connected_regions(const MismatchMap& map) {
    const int cw = map.cells_x();
    const int ch = map.cells_y();
    const int scale = map.granularity == MapGranularity::Pixel ? 1 : 8;
    std::vector<Rect> regions;
    std::vector<std::uint8_t> seen(map.flags.size(), 0);
    std::deque<std::pair<int, int>> queue;

    for (int sy = 0; sy < ch; ++sy) {
        for (int sx = 0; sx < cw; ++sx) {
            const std::size_t start = static_cast<std::size_t>(sy) * cw + sx;
            if (!map.flags[start] || seen[start]) continue;
            int min_x = sx, max_x = sx, min_y = sy, max_y = sy;
            seen[start] = 1;
            queue.emplace_back(sx, sy);
            while (!queue.empty()) {
                const auto [cx, cy] = queue.front();
                queue.pop_front();
                min_x = std::min(min_x, cx);
                max_x = std::max(max_x, cx);
                min_y = std::min(min_y, cy);
                max_y = std::max(max_y, cy);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = cx + dx, ny = cy + dy;
                        if (nx < 0 || ny < 0 || nx >= cw || ny >= ch) continue;
                        const std::size_t ni = static_cast<std::size_t>(ny) * cw + nx;
                        if (!map.flags[ni] || seen[ni]) continue;
                        seen[ni] = 1;
                        queue.emplace_back(nx, ny);
                    }
                }
            }
            regions.push_back(Rect{min_x * scale, min_y * scale, (max_x - min_x + 1) * scale,
                                   (max_y - min_y + 1) * scale});
        }
    }
    return regions;
}

Rect flagged_bounding_box(const MismatchMap& map) {
    const int cw = map.cells_x();
    const int ch = map.cells_y();
    const int scale = map.granularity == MapGranularity::Pixel ? 1 : 8;
    int min_x = cw, min_y = ch, max_x = -1, max_y = -1;
    for (int y = 0; y < ch; ++y) {
        for (int x = 0; x < cw; ++x) {
            if (!map.flags[static_cast<std::size_t>(y) * cw + x]) continue;
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
    }
    if (max_x < 0) return Rect{};
    return Rect{min_x * scale, min_y * scale, (max_x - min_x + 1) * scale, (max_y - min_y + 1) * scale};
}

std::string ForgeryReport::to_json(bool include_mask) const {
    json j;
    j["verdict"] = photostamp::to_string(verdict);
    j["flagged_ratio"] = flagged_ratio;
    j["regions"] = json::array();
    for (const auto& r : regions) j["regions"].push_back({{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}});
    j["coverage"] = coverage;
    j["low_confidence_blocks"] = low_confidence_blocks;
    if (!message.empty()) j["message"] = message;
    if (include_mask) {
        json m;
        m["granularity"] = map.granularity == MapGranularity::Pixel ? "pixel" : "block8";
        m["cells_x"] = map.cells_x();
        m["cells_y"] = map.cells_y();
        std::string bits(map.flags.size(), '0');
        for (std::size_t i = 0; i < map.flags.size(); ++i)
            if (map.flags[i]) bits[i] = '1';
        m["flags"] = bits;
        j["mask"] = m;
    }
    return j.dump(2);
}

} // namespace photostamp
