#include "hicrypt/image.hpp"

#include <png.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <string>

namespace hicrypt {

namespace {

std::string quoted(const std::filesystem::path& p) {
    return "'" + p.string() + "'";
}

void check_shape(const GrayImage& img) {
    if (img.width < 1 || img.height < 1 ||
        img.pixels.size() != static_cast<std::size_t>(img.width) * img.height) {
        throw format_error("image has inconsistent dimensions");
    }
}

// Reads the next PGM header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
        } else if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#') {
                tok.push_back(static_cast<char>(in.get()));
            }
            return tok;
        }
    }
    return tok;
}

int parse_header_int(std::istream& in, const char* what) {
    const std::string tok = next_token(in);
    if (tok.empty()) {
        throw format_error(std::string("PGM header ends before ") + what);
    }
    try {
        const int v = std::stoi(tok);
        if (v < 1) {
            throw format_error(std::string("PGM ") + what + " must be >= 1");
        }
        return v;
    } catch (const format_error&) {
        throw;
    } catch (const std::exception&) {
        throw format_error(std::string("bad PGM ") + what + ": '" + tok + "'");
    }
}

} // namespace

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w), height(h) {
    if (w < 1 || h < 1) {
        throw format_error("image dimensions must be >= 1, got " +
                           std::to_string(w) + "x" + std::to_string(h));
    }
    pixels.assign(static_cast<std::size_t>(w) * h, fill);
}

GrayImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw format_error("cannot open " + quoted(path));
    }
    if (next_token(in) != "P5") {
        throw format_error(quoted(path) + " is not a binary PGM (P5) file");
    }
    const int width = parse_header_int(in, "width");
    const int height = parse_header_int(in, "height");
    const int maxval = parse_header_int(in, "maxval");
    if (maxval > 255) {
        throw format_error(quoted(path) + " has maxval " +
                           std::to_string(maxval) + "; only 8-bit supported");
    }
    in.get();  // the single whitespace byte separating header and raster

    GrayImage img(width, height);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
        throw format_error(quoted(path) + " is truncated");
    }
    return img;
}

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
    check_shape(img);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw format_error("cannot create " + quoted(path));
    }
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) {
        throw format_error("write failed for " + quoted(path));
    }
}

GrayImage load_png(const std::filesystem::path& path) {
    png_image im;
    std::memset(&im, 0, sizeof(im));
    im.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&im, path.string().c_str())) {
        throw format_error("PNG read failed for " + quoted(path) + ": " +
                           im.message);
    }
    if (im.format != PNG_FORMAT_GRAY) {
        png_image_free(&im);
        throw format_error(quoted(path) +
                           " is not an 8-bit grayscale PNG");
    }
    GrayImage img(static_cast<int>(im.width), static_cast<int>(im.height));
    if (!png_image_finish_read(&im, nullptr, img.pixels.data(), 0, nullptr)) {
        const std::string msg = im.message;
        png_image_free(&im);
        throw format_error("PNG decode failed for " + quoted(path) + ": " + msg);
    }
    return img;
}

void save_png(const std::filesystem::path& path, const GrayImage& img) {
    check_shape(img);
    png_image im;
    std::memset(&im, 0, sizeof(im));
    im.version = PNG_IMAGE_VERSION;
    im.width = static_cast<png_uint_32>(img.width);
    im.height = static_cast<png_uint_32>(img.height);
    im.format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&im, path.string().c_str(), 0,
                                 img.pixels.data(), 0, nullptr)) {
        const std::string msg = im.message;
        png_image_free(&im);
        throw format_error("PNG write failed for " + quoted(path) + ": " + msg);
    }
}

GrayImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw format_error("cannot open " + quoted(path));
    }
    unsigned char magic[8] = {};
    in.read(reinterpret_cast<char*>(magic), sizeof(magic));
    in.close();

    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G',
                                             '\r', '\n', 0x1a, '\n'};
    if (std::memcmp(magic, png_sig, sizeof(png_sig)) == 0) {
        return load_png(path);
    }
    if (magic[0] == 'P' && magic[1] == '5') {
        return load_pgm(path);
    }
    throw format_error(quoted(path) + " is neither PNG nor binary PGM");
}

void save_image(const std::filesystem::path& path, const GrayImage& img) {
    if (path.extension() == ".png" || path.extension() == ".PNG") {
        save_png(path, img);
    } else {
        save_pgm(path, img);
    }
}

} // namespace hicrypt
