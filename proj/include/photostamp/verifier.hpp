#pragma once

#include <string>
#include <vector>

#include "photostamp/cipherstream.hpp"
#include "photostamp/frequency.hpp"
#include "photostamp/image.hpp"
#include "photostamp/spatial.hpp"

namespace photostamp {

enum class Domain { Spatial, Frequency };

// One embedding technique, fully determined: domain plus the bit plane
// (spatial) or coefficient selector and tolerance (frequency).
struct StampConfig {
    Domain domain = Domain::Spatial;
    BitPlane plane = BitPlane::lsb();
    CoeffSelector selector = CoeffSelector::mid_ac();
    ChannelRoles roles{};
    double tol = 8.0;

    // Technique names: lsb, bit4, msb, dc, first-ac, mid-ac, last-ac.
    static StampConfig from_technique(const std::string& name);
    std::string technique_name() const;
    std::string to_json() const;
    static StampConfig from_json(const std::string& json_text);
};

// The seven benchmark techniques in table order.
std::vector<std::pair<std::string, StampConfig>> all_techniques();

enum class Verdict { Authentic, Tampered, UnknownCamera, Error };

const char* to_string(Verdict v);

struct ForgeryReport {
    Verdict verdict = Verdict::Error;
    double flagged_ratio = 0;
    std::vector<Rect> regions;       // 8-connected component bounding boxes, pixel coords
    double coverage = 0;             // fraction of pixels verifiable
    long low_confidence_blocks = 0;  // frequency only: clamped over-tolerance blocks
    std::string message;
    MismatchMap map;                 // retained for mask output; not serialized by default

    std::string to_json(bool include_mask = false) const;
};

// Embeds the identifier and tags the image with the public photo id.
RgbImage stamp(const RgbImage& img, const CameraIdentity& cam, const StampConfig& cfg);

// Recomputes the identifier and reduces the mismatch map to a verdict:
// Authentic iff nothing is flagged.
ForgeryReport verify(const RgbImage& img, const CameraIdentity& cam, const StampConfig& cfg);

// Bounding boxes of maximal 8-connected flag components, in pixel coords.
std::vector<Rect> connected_regions(const MismatchMap& map);

// Bounding box of all flagged cells (pixel coords); {0,0,0,0} when none.
Rect flagged_bounding_box(const MismatchMap& map);

} // namespace photostamp
