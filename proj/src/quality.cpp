#include "photostamp/quality.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "photostamp/errors.hpp"

namespace photostamp {

namespace {

void check_dims(const RgbImage& a, const RgbImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionMismatch("images have different dimensions");
    if (a.pixels.size() != a.pixel_count() * 3 || b.pixels.size() != b.pixel_count() * 3)
        throw Error("invalid image buffer");
}

std::vector<double> plane_as_double(const RgbImage& img, int ch) {
    std::vector<double> p(img.pixel_count());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = img.pixels[3 * i + ch];
    return p;
}

// Separable convolution with a normalized 1-D kernel, valid range only along
// the filtered axis; the caller tracks valid offsets.
void filter_rows(const std::vector<double>& in, int w, int h, const std::vector<double>& k,
                 std::vector<double>& out) {
    const int r = static_cast<int>(k.size()) / 2;
    out.assign(in.size(), 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = r; x < w - r; ++x) {
            double s = 0;
            for (int t = -r; t <= r; ++t) s += in[static_cast<std::size_t>(y) * w + x + t] * k[t + r];
            out[static_cast<std::size_t>(y) * w + x] = s;
        }
    }
}

void filter_cols(const std::vector<double>& in, int w, int h, const std::vector<double>& k,
                 std::vector<double>& out) {
    const int r = static_cast<int>(k.size()) / 2;
    out.assign(in.size(), 0.0);
    for (int y = r; y < h - r; ++y) {
        for (int x = 0; x < w; ++x) {
            double s = 0;
            for (int t = -r; t <= r; ++t) s += in[static_cast<std::size_t>(y + t) * w + x] * k[t + r];
            out[static_cast<std::size_t>(y) * w + x] = s;
        }
    }
}

std::vector<double> gaussian_filter(const std::vector<double>& in, int w, int h,
                                    const std::vector<double>& k) {
    std::vector<double> tmp, out;
    filter_rows(in, w, h, k, tmp);
    filter_cols(tmp, w, h, k, out);
    return out;
}

std::vector<double> gaussian_kernel_11() {
    std::vector<double> k(11);
    const double sigma = 1.5;
    double sum = 0;
    for (int i = 0; i < 11; ++i) {
        const double d = i - 5;
        k[i] = std::exp(-d * d / (2 * sigma * sigma));
        sum += k[i];
    }
    for (auto& v : k) v /= sum;
    return k;
}

double ssim_channel(const std::vector<double>& x, const std::vector<double>& y, int w, int h) {
    static const std::vector<double> kernel = gaussian_kernel_11();
    constexpr double C1 = (0.01 * 255) * (0.01 * 255);
    constexpr double C2 = (0.03 * 255) * (0.03 * 255);

    std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }

    const auto mu_x = gaussian_filter(x, w, h, kernel);
    const auto mu_y = gaussian_filter(y, w, h, kernel);
    const auto e_xx = gaussian_filter(xx, w, h, kernel);
    const auto e_yy = gaussian_filter(yy, w, h, kernel);
    const auto e_xy = gaussian_filter(xy, w, h, kernel);

    double total = 0;
    std::size_t count = 0;
    for (int yq = 5; yq < h - 5; ++yq) {
        for (int xq = 5; xq < w - 5; ++xq) {
            const std::size_t i = static_cast<std::size_t>(yq) * w + xq;
            const double mx = mu_x[i], my = mu_y[i];
            const double vx = e_xx[i] - mx * mx;
            const double vy = e_yy[i] - my * my;
            const double cxy = e_xy[i] - mx * my;
            const double num = (2 * mx * my + C1) * (2 * cxy + C2);
            const double den = (mx * mx + my * my + C1) * (vx + vy + C2);
            total += num / den;
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

double uiqi_channel(const std::vector<double>& x, const std::vector<double>& y, int w, int h) {
    // Integral images over x, y, x^2, y^2, xy give O(1) window sums.
    const int W = w + 1;
    const auto idx = [W](int xx, int yy) { return static_cast<std::size_t>(yy) * W + xx; };
    std::vector<double> sx(static_cast<std::size_t>(W) * (h + 1), 0.0), sy = sx, sxx = sx, syy = sx, sxy = sx;
    for (int yy = 0; yy < h; ++yy) {
        for (int xx = 0; xx < w; ++xx) {
            const std::size_t i = static_cast<std::size_t>(yy) * w + xx;
            sx[idx(xx + 1, yy + 1)] = x[i];
            sy[idx(xx + 1, yy + 1)] = y[i];
            sxx[idx(xx + 1, yy + 1)] = x[i] * x[i];
            syy[idx(xx + 1, yy + 1)] = y[i] * y[i];
            sxy[idx(xx + 1, yy + 1)] = x[i] * y[i];
        }
    }
    for (auto* s : {&sx, &sy, &sxx, &syy, &sxy}) {
        auto& v = *s;
        for (int yy = 1; yy <= h; ++yy)
            for (int xx = 1; xx <= w; ++xx)
                v[idx(xx, yy)] += v[idx(xx - 1, yy)] + v[idx(xx, yy - 1)] - v[idx(xx - 1, yy - 1)];
    }
    const auto window_sum = [&](const std::vector<double>& v, int x0, int y0) {
        return v[idx(x0 + 8, y0 + 8)] - v[idx(x0, y0 + 8)] - v[idx(x0 + 8, y0)] + v[idx(x0, y0)];
    };

    constexpr double n = 64.0;
    constexpr double var_eps = 1e-9;
    double total = 0;
    std::size_t count = 0;
    for (int y0 = 0; y0 + 8 <= h; ++y0) {
        for (int x0 = 0; x0 + 8 <= w; ++x0) {
            const double mx = window_sum(sx, x0, y0) / n;
            const double my = window_sum(sy, x0, y0) / n;
            const double vx = window_sum(sxx, x0, y0) / n - mx * mx;
            const double vy = window_sum(syy, x0, y0) / n - my * my;
            const double cxy = window_sum(sxy, x0, y0) / n - mx * my;
            const bool zx = vx <= var_eps;
            const bool zy = vy <= var_eps;
            double q;
            if (zx && zy)
                q = 1.0;
            else if (zx || zy)
                q = 0.0;
            else
                q = (4.0 * cxy * mx * my) / ((vx + vy) * (mx * mx + my * my));
            total += q;
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

} // namespace

double mae(const RgbImage& a, const RgbImage& b) {
    check_dims(a, b);
    double sum = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i)
        sum += std::abs(static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]));
    return sum / static_cast<double>(a.pixels.size());
}

double mse(const RgbImage& a, const RgbImage& b) {
    check_dims(a, b);
    double sum = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        sum += d * d;
    }
    return sum / static_cast<double>(a.pixels.size());
}

double psnr(const RgbImage& a, const RgbImage& b) {
    const double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

double ssim(const RgbImage& a, const RgbImage& b) {
    check_dims(a, b);
    if (a.width < 11 || a.height < 11) throw ImageTooSmall("SSIM needs min side >= 11");
    double total = 0;
    for (int ch = 0; ch < 3; ++ch)
        total += ssim_channel(plane_as_double(a, ch), plane_as_double(b, ch), a.width, a.height);
    return total / 3.0;
}

double uiqi(const RgbImage& a, const RgbImage& b) {
    check_dims(a, b);
    if (a.width < 8 || a.height < 8) throw ImageTooSmall("UIQI needs min side >= 8");
    double total = 0;
    for (int ch = 0; ch < 3; ++ch)
        total += uiqi_channel(plane_as_double(a, ch), plane_as_double(b, ch), a.width, a.height);
    return total / 3.0;
}

QualityReport measure_quality(const RgbImage& original, const RgbImage& processed) {
    QualityReport r;
    r.mae = mae(original, processed);
    r.mse = mse(original, processed);
    r.psnr = psnr(original, processed);
    r.ssim = ssim(original, processed);
    r.uiqi = uiqi(original, processed);
    return r;
}

std::string QualityReport::to_json() const {
    std::ostringstream os;
    os.precision(12);
    os << "{\"mae\":" << mae << ",\"mse\":" << mse << ",\"psnr\":";
    if (std::isinf(psnr))
        os << "\"inf\"";
    else
        os << psnr;
    os << ",\"ssim\":" << ssim << ",\"uiqi\":" << uiqi << "}";
    return os.str();
}

} // namespace photostamp
