#pragma once

#include <string>

#include "photostamp/image.hpp"

namespace photostamp {

// The five indices reported for an original/processed pair. All of them
// average over the three channels.
struct QualityReport {
    double mae = 0;
    double mse = 0;
    double psnr = 0; // dB, +inf for identical images
    double ssim = 0;
    double uiqi = 0;

    std::string to_json() const;
};

double mae(const RgbImage& a, const RgbImage& b);
double mse(const RgbImage& a, const RgbImage& b);
double psnr(const RgbImage& a, const RgbImage& b);

// Standard SSIM: 11x11 Gaussian window, sigma 1.5, K1=0.01, K2=0.03, L=255,
// valid-window mean, per channel then averaged. Needs min side >= 11.
double ssim(const RgbImage& a, const RgbImage& b);

// Wang-Bovik Q index over 8x8 sliding windows (stride 1), per channel then
// averaged. Windows with zero variance in both images count as 1, in exactly
// one as 0. Needs min side >= 8.
double uiqi(const RgbImage& a, const RgbImage& b);

QualityReport measure_quality(const RgbImage& original, const RgbImage& processed);

} // namespace photostamp
