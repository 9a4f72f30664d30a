#include "fixtures.hpp"

#include <algorithm>
#include <cstdlib>

namespace fixtures {

using hicrypt::GrayImage;
using hicrypt::chaos::Key;
using hicrypt::chaos::SubKey;

Key reference_key() {
    Key k;
    k.sk1 = SubKey{0.45, 3.801, 0.4003, 3.6701};
    k.sk2 = SubKey{0.25, 3.8, 0.4, 3.67};
    k.sk3 = SubKey{0.51, 3.805, 0.401, 3.77};
    return k;
}

namespace {

// 3x3 box blur with replicate borders, integer mean.
GrayImage box_blur(const GrayImage& img) {
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            int sum = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    int sx = std::clamp(x + dx, 0, img.width - 1);
                    int sy = std::clamp(y + dy, 0, img.height - 1);
                    sum += img.at(sx, sy);
                }
            }
            out.at(x, y) = static_cast<std::uint8_t>(sum / 9);
        }
    }
    return out;
}

} // namespace

GrayImage phantom(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&rng](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };

    // Bilinear gradient between four random corner intensities.
    const int c00 = pick(30, 120), c10 = pick(60, 180);
    const int c01 = pick(50, 160), c11 = pick(100, 220);
    const int wm = std::max(width - 1, 1), hm = std::max(height - 1, 1);
    GrayImage img(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const long long top = static_cast<long long>(c00) * (wm - x) + static_cast<long long>(c10) * x;
            const long long bot = static_cast<long long>(c01) * (wm - x) + static_cast<long long>(c11) * x;
            img.at(x, y) = static_cast<std::uint8_t>((top * (hm - y) + bot * y) / (static_cast<long long>(wm) * hm));
        }
    }

    // Elliptical blobs blended onto the gradient.
    const int blobs = 6;
    for (int b = 0; b < blobs; ++b) {
        const int cx = pick(0, width - 1), cy = pick(0, height - 1);
        const int rx = pick(width / 16 + 2, width / 5 + 3);
        const int ry = pick(height / 16 + 2, height / 5 + 3);
        const int g = pick(10, 245);
        const long long rx2 = static_cast<long long>(rx) * rx;
        const long long ry2 = static_cast<long long>(ry) * ry;
        for (int y = std::max(0, cy - ry); y <= std::min(height - 1, cy + ry); ++y) {
            for (int x = std::max(0, cx - rx); x <= std::min(width - 1, cx + rx); ++x) {
                const long long dx = x - cx, dy = y - cy;
                if (dx * dx * ry2 + dy * dy * rx2 <= rx2 * ry2) {
                    img.at(x, y) = static_cast<std::uint8_t>((img.at(x, y) + 3 * g) / 4);
                }
            }
        }
    }

    return box_blur(box_blur(img));
}

GrayImage golden16() {
    GrayImage img(16, 16);
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
            const int dx = x - 8, dy = y - 8;
            img.at(x, y) = (dx * dx + dy * dy <= 20)
                               ? std::uint8_t{230}
                               : static_cast<std::uint8_t>(40 + x * 8 + y * 2);
        }
    }
    return img;
}

GrayImage noise_image(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GrayImage img(width, height);
    for (auto& p : img.pixels) {
        p = static_cast<std::uint8_t>(rng() & 0xff);
    }
    return img;
}

SubKey random_subkey(std::mt19937_64& rng) {
    auto unit = [&rng] {
        double u;
        do {
            u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        } while (u == 0.0);
        return u;
    };
    auto mu = [&rng] {
        return 3.57 + static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53 * 0.43;
    };
    return SubKey{unit(), mu(), unit(), mu()};
}

Key random_key(std::mt19937_64& rng) {
    Key k;
    k.sk1 = random_subkey(rng);
    k.sk2 = random_subkey(rng);
    k.sk3 = random_subkey(rng);
    return k;
}

GrayImage xor_stub_encrypt(const GrayImage& img, const SubKey& sk) {
    hicrypt::chaos::ChaosStream pad(sk.x0_xor, sk.mu0_xor);
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.size(); ++i) {
        out.pixels[i] = static_cast<std::uint8_t>(img.pixels[i] ^ pad.next_symbol(256));
    }
    return out;
}

} // namespace fixtures
