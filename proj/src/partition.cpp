#include "hicrypt/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace hicrypt::partition {

namespace {

// tan(22.5 deg) and tan(67.5 deg); gradient directions are classified into
// the four canonical sectors by slope comparison instead of atan2, keeping
// the decision exactly reproducible.
constexpr double kTanLo = 0.41421356237309503;
constexpr double kTanHi = 2.414213562373095;

int clampi(int v, int lo, int hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

// Separable Gaussian kernel. Weights are snapped to a 1e-12 grid before
// normalization so the mask never depends on the platform's exp() rounding;
// everything downstream is fixed-order IEEE arithmetic.
std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double raw = std::exp(-(static_cast<double>(k) * k) /
                                    (2.0 * sigma * sigma));
        const double snapped = std::round(raw * 1e12) / 1e12;
        w[static_cast<std::size_t>(k + radius)] = snapped;
        sum += snapped;
    }
    for (double& v : w) {
        v /= sum;
    }
    return w;
}

std::vector<double> blur(const std::vector<double>& src, int width, int height,
                         const std::vector<double>& kernel) {
    const int radius = static_cast<int>(kernel.size() / 2);
    std::vector<double> tmp(src.size());
    std::vector<double> dst(src.size());
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int xx = clampi(x + k, 0, width - 1);
                acc += kernel[static_cast<std::size_t>(k + radius)] *
                       src[static_cast<std::size_t>(y) * width + xx];
            }
            tmp[static_cast<std::size_t>(y) * width + x] = acc;
        }
    }
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int yy = clampi(y + k, 0, height - 1);
                acc += kernel[static_cast<std::size_t>(k + radius)] *
                       tmp[static_cast<std::size_t>(yy) * width + x];
            }
            dst[static_cast<std::size_t>(y) * width + x] = acc;
        }
    }
    return dst;
}

} // namespace

std::size_t EdgeMask::count() const {
    return static_cast<std::size_t>(
        std::count_if(bits.begin(), bits.end(),
                      [](std::uint8_t b) { return b != 0; }));
}

Planes split_planes(const GrayImage& img) {
    Planes p;
    p.msb7.resize(img.pixels.size());
    p.lsb.resize(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        p.msb7[i] = static_cast<std::uint8_t>(img.pixels[i] >> 1);
        p.lsb[i] = static_cast<std::uint8_t>(img.pixels[i] & 1);
    }
    return p;
}

GrayImage merge_planes(std::span<const std::uint8_t> msb7,
                       std::span<const std::uint8_t> lsb,
                       int width, int height) {
    if (msb7.size() != lsb.size()) {
        throw format_error("plane length mismatch: " +
                           std::to_string(msb7.size()) + " vs " +
                           std::to_string(lsb.size()));
    }
    GrayImage img(width, height);
    if (msb7.size() != img.pixels.size()) {
        throw format_error("plane length does not match dimensions");
    }
    for (std::size_t i = 0; i < msb7.size(); ++i) {
        img.pixels[i] = static_cast<std::uint8_t>((msb7[i] << 1) | (lsb[i] & 1));
    }
    return img;
}

EdgeMask canny(const GrayImage& img, const CannyParams& params) {
    if (!(params.sigma > 0.0)) {
        throw format_error("canny sigma must be positive");
    }
    if (!(params.low > 0.0 && params.low < params.high)) {
        throw format_error("canny thresholds must satisfy 0 < low < high");
    }
    const int w = img.width;
    const int h = img.height;
    const std::size_t n = img.pixels.size();

    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = img.pixels[i] / 255.0;
    }
    f = blur(f, w, h, gaussian_kernel(params.sigma));

    auto sample = [&](int x, int y) {
        return f[static_cast<std::size_t>(clampi(y, 0, h - 1)) * w +
                 clampi(x, 0, w - 1)];
    };

    std::vector<double> gx(n), gy(n), mag(n);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double tl = sample(x - 1, y - 1), tc = sample(x, y - 1),
                         tr = sample(x + 1, y - 1);
            const double ml = sample(x - 1, y), mr = sample(x + 1, y);
            const double bl = sample(x - 1, y + 1), bc = sample(x, y + 1),
                         br = sample(x + 1, y + 1);
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            gx[i] = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
            gy[i] = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
            mag[i] = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
        }
    }

    // Non-maximum suppression. Out-of-image neighbors count as magnitude 0.
    // The asymmetric comparison (>= toward the gradient, > away from it)
    // keeps exactly one pixel when a symmetric step produces a two-pixel
    // magnitude plateau.
    auto mag_at = [&](int x, int y) {
        if (x < 0 || x >= w || y < 0 || y >= h) return 0.0;
        return mag[static_cast<std::size_t>(y) * w + x];
    };

    std::vector<std::uint8_t> thin(n, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            const double m = mag[i];
            if (m <= 0.0) continue;
            const double adx = std::fabs(gx[i]);
            const double ady = std::fabs(gy[i]);
            int sx, sy;
            if (ady <= kTanLo * adx) {
                sx = gx[i] >= 0.0 ? 1 : -1;
                sy = 0;
            } else if (ady >= kTanHi * adx) {
                sx = 0;
                sy = gy[i] >= 0.0 ? 1 : -1;
            } else {
                sx = gx[i] >= 0.0 ? 1 : -1;
                sy = gy[i] >= 0.0 ? 1 : -1;
            }
            const double fwd = mag_at(x + sx, y + sy);
            const double back = mag_at(x - sx, y - sy);
            if (m >= fwd && m > back) {
                thin[i] = 1;
            }
        }
    }

    // Hysteresis: flood 8-connected from strong responses through weak ones.
    EdgeMask out;
    out.width = w;
    out.height = h;
    out.bits.assign(n, 0);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
        if (thin[i] && mag[i] >= params.high) {
            out.bits[i] = 1;
            stack.push_back(i);
        }
    }
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        const int x = static_cast<int>(i % static_cast<std::size_t>(w));
        const int y = static_cast<int>(i / static_cast<std::size_t>(w));
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx;
                const int ny = y + dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
                if (!out.bits[j] && thin[j] && mag[j] >= params.low) {
                    out.bits[j] = 1;
                    stack.push_back(j);
                }
            }
        }
    }
    return out;
}

EdgeMask dilate(const EdgeMask& mask, int radius) {
    if (radius < 0) {
        throw format_error("dilation radius must be >= 0");
    }
    const int w = mask.width;
    const int h = mask.height;
    EdgeMask out;
    out.width = w;
    out.height = h;
    out.bits.assign(mask.bits.size(), 0);
    if (radius == 0) {
        out.bits = mask.bits;
        return out;
    }

    // Square structuring element, applied separably: horizontal run-max
    // then vertical run-max.
    std::vector<std::uint8_t> tmp(mask.bits.size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t v = 0;
            for (int k = std::max(0, x - radius);
                 k <= std::min(w - 1, x + radius) && !v; ++k) {
                v = mask.bits[static_cast<std::size_t>(y) * w + k];
            }
            tmp[static_cast<std::size_t>(y) * w + x] = v;
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t v = 0;
            for (int k = std::max(0, y - radius);
                 k <= std::min(h - 1, y + radius) && !v; ++k) {
                v = tmp[static_cast<std::size_t>(k) * w + x];
            }
            out.bits[static_cast<std::size_t>(y) * w + x] = v;
        }
    }
    return out;
}

Partition partition_content(std::span<const std::uint8_t> msb7,
                            const EdgeMask& mask) {
    if (msb7.size() != mask.bits.size()) {
        throw format_error("content length " + std::to_string(msb7.size()) +
                           " does not match mask size " +
                           std::to_string(mask.bits.size()));
    }
    Partition p;
    for (std::size_t i = 0; i < msb7.size(); ++i) {
        auto& side = mask.bits[i] ? p.contour : p.region;
        side.push_back({static_cast<std::uint32_t>(i), msb7[i]});
    }
    return p;
}

std::vector<std::uint8_t> unpartition(const Partition& p, int width,
                                      int height) {
    const std::size_t total = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> out(total, 0);
    std::vector<std::uint8_t> seen(total, 0);
    std::size_t covered = 0;
    for (const auto* side : {&p.contour, &p.region}) {
        for (const auto& e : *side) {
            if (e.index >= total) {
                throw format_error("partition index " +
                                   std::to_string(e.index) + " out of range");
            }
            if (seen[e.index]) {
                throw format_error("partition index " +
                                   std::to_string(e.index) + " duplicated");
            }
            seen[e.index] = 1;
            out[e.index] = e.value;
            ++covered;
        }
    }
    if (covered != total) {
        throw format_error("partition covers " + std::to_string(covered) +
                           " of " + std::to_string(total) + " pixels");
    }
    return out;
}

GrayImage mask_to_image(const EdgeMask& mask) {
    GrayImage img(mask.width, mask.height);
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
        img.pixels[i] = mask.bits[i] ? 255 : 0;
    }
    return img;
}

} // namespace hicrypt::partition
