#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "photostamp/image.hpp"
#include "photostamp/verifier.hpp"

namespace photostamp {

// The 16 manipulation scenarios plus the no-op control row used by the bench.
enum class TamperScenario {
    Identity,
    CopyMoveInternal,
    SpliceExternal,
    RegionFillConstant,
    TextOverlay,
    Crop,
    Resize,
    Rotate90,
    FlipHorizontal,
    JpegRecompressQ90,
    GaussianNoise,
    GaussianBlur,
    BrightnessPlus10,
    ContrastStretch,
    ChannelSwapRB,
    SinglePixelEdit,
    HistogramEqualize,
};

const char* to_string(TamperScenario s);
TamperScenario scenario_from_string(const std::string& name);

// The 16 manipulation scenarios (everything except Identity).
const std::vector<TamperScenario>& manipulation_scenarios();

struct TamperSpec {
    TamperScenario name = TamperScenario::Identity;
    std::uint64_t seed = 0;
    std::optional<Rect> region;      // region scenarios; deterministic default when absent
    double sigma = 0;                // GaussianNoise (default 2.0) / GaussianBlur (default 1.0)
    int jpeg_quality = 90;
    std::uint8_t fill_value = 128;   // RegionFillConstant
    std::string text = "FAKE";       // TextOverlay
};

struct TamperResult {
    RgbImage image;
    std::vector<Rect> truth_region; // empty = global manipulation
    bool dims_changed = false;
};

TamperResult apply_tamper(const RgbImage& img, const TamperSpec& spec);

// Default specs for all 16 manipulation scenarios with a shared seed.
std::vector<TamperSpec> default_scenarios(std::uint64_t seed);

struct DetectionRow {
    std::string image;
    std::string technique;
    std::string scenario;
    Verdict verdict = Verdict::Error;
    double flagged_ratio = 0;
    double iou = std::numeric_limits<double>::quiet_NaN(); // NaN when not applicable
    double runtime_ms = 0;
    bool dims_changed = false;
    std::string error;
};

struct DetectionTable {
    std::vector<DetectionRow> rows;

    std::string to_json() const;
    std::string to_csv() const;
};

// stamp -> tamper -> verify for every (image, technique, scenario) triple,
// plus one identity control row per (image, technique).
DetectionTable run_detection_bench(const std::vector<std::pair<std::string, RgbImage>>& images,
                                   const std::vector<std::pair<std::string, StampConfig>>& techniques,
                                   const std::vector<TamperSpec>& scenarios,
                                   const CameraIdentity& cam = CameraIdentity("BENCH-CAM-001"));

} // namespace photostamp
