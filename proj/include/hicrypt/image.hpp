#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "hicrypt/errors.hpp"

namespace hicrypt {

// 8-bit grayscale image, row-major. The whole pipeline works on this one
// representation; file formats are converted at the boundary.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0);

    std::uint8_t& at(int x, int y) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::size_t size() const { return pixels.size(); }

    bool operator==(const GrayImage&) const = default;
};

// Readers sniff the file's magic bytes (PGM "P5" or the PNG signature), so
// the extension does not have to be truthful on input.
GrayImage load_image(const std::filesystem::path& path);

// Writers pick the format from the extension: .png writes PNG, everything
// else binary PGM.
void save_image(const std::filesystem::path& path, const GrayImage& img);

GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const std::filesystem::path& path, const GrayImage& img);

// Only 8-bit single-channel PNGs are accepted; color and 16-bit files are
// rejected rather than silently converted.
GrayImage load_png(const std::filesystem::path& path);
void save_png(const std::filesystem::path& path, const GrayImage& img);

} // namespace hicrypt
