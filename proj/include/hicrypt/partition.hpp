#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hicrypt/image.hpp"

namespace hicrypt::partition {

// Binary mask over an image: 1 marks a dilated-contour pixel, 0 a region
// (homogeneous area) pixel.
struct EdgeMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    bool at(int x, int y) const {
        return bits[static_cast<std::size_t>(y) * width + x] != 0;
    }
    std::size_t count() const;

    bool operator==(const EdgeMask&) const = default;
};

struct CannyParams {
    double sigma = 1.4;  // Gaussian smoothing, in pixels
    double low = 0.1;    // hysteresis thresholds on the gradient magnitude
    double high = 0.2;   // of the [0,1]-normalized image
};

// The seven high bit planes and the low plane of an image, as parallel
// per-pixel sequences.
struct Planes {
    std::vector<std::uint8_t> msb7;  // pixel >> 1
    std::vector<std::uint8_t> lsb;   // pixel & 1
};

Planes split_planes(const GrayImage& img);
GrayImage merge_planes(std::span<const std::uint8_t> msb7,
                       std::span<const std::uint8_t> lsb,
                       int width, int height);

// Classic Canny chain: Gaussian blur, Sobel gradients, non-maximum
// suppression, double-threshold hysteresis with 8-connected linking. All
// arithmetic is fixed-order binary64 so equal inputs give equal masks on
// every platform.
EdgeMask canny(const GrayImage& img, const CannyParams& params = {});

// Morphological dilation with a (2*radius+1) square structuring element.
EdgeMask dilate(const EdgeMask& mask, int radius);

// The 7-bit content values split by the mask, each half kept in ascending
// raster order together with its source index.
struct Partition {
    struct Entry {
        std::uint32_t index;
        std::uint8_t value;
    };
    std::vector<Entry> contour;
    std::vector<Entry> region;
};

Partition partition_content(std::span<const std::uint8_t> msb7,
                            const EdgeMask& mask);

// Reassembles the flat content sequence. Every index in [0, width*height)
// must be covered exactly once across both halves.
std::vector<std::uint8_t> unpartition(const Partition& p, int width,
                                      int height);

// Renders a mask as a {0,255} image for export and inspection.
GrayImage mask_to_image(const EdgeMask& mask);

} // namespace hicrypt::partition
