#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "hicrypt/image.hpp"

using namespace hicrypt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("hicrypt_io_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    fs::path operator/(const std::string& name) const { return path / name; }
};

void write_bytes(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

} // namespace

TEST_CASE("image dimensions are validated") {
    CHECK_THROWS_AS(GrayImage(0, 5), format_error);
    CHECK_THROWS_AS(GrayImage(5, 0), format_error);
    CHECK_THROWS_AS(GrayImage(-1, 5), format_error);
    const GrayImage ok(1, 1, 7);
    CHECK(ok.pixels == std::vector<std::uint8_t>{7});
}

TEST_CASE("pgm round-trips bit-exactly") {
    TempDir dir;
    const auto img = fixtures::noise_image(37, 23, 1);
    save_image(dir / "img.pgm", img);
    CHECK(load_image(dir / "img.pgm") == img);

    const auto tiny = fixtures::noise_image(1, 1, 2);
    save_image(dir / "tiny.pgm", tiny);
    CHECK(load_image(dir / "tiny.pgm") == tiny);
}

TEST_CASE("png round-trips bit-exactly") {
    TempDir dir;
    const auto img = fixtures::phantom(64, 48, 4);
    save_image(dir / "img.png", img);
    CHECK(load_image(dir / "img.png") == img);
}

TEST_CASE("loader sniffs the format from magic bytes") {
    TempDir dir;
    const auto img = fixtures::noise_image(16, 16, 3);
    // PNG bytes behind a .pgm name still load as PNG.
    save_png(dir / "mislabeled.pgm", img);
    CHECK(load_image(dir / "mislabeled.pgm") == img);
}

TEST_CASE("pgm header comments and whitespace are tolerated") {
    TempDir dir;
    write_bytes(dir / "c.pgm",
                "P5\n# a comment line\n 3 # sizes\n2\n# maxval next\n255\n" +
                    std::string("abcdef"));
    const auto img = load_image(dir / "c.pgm");
    CHECK(img.width == 3);
    CHECK(img.height == 2);
    CHECK(img.pixels == std::vector<std::uint8_t>{'a', 'b', 'c', 'd', 'e', 'f'});
}

TEST_CASE("malformed image files are rejected") {
    TempDir dir;

    SUBCASE("truncated pixel data") {
        write_bytes(dir / "t.pgm", "P5\n4 4\n255\nabc");
        CHECK_THROWS_AS(load_image(dir / "t.pgm"), format_error);
    }
    SUBCASE("unsupported maxval") {
        write_bytes(dir / "m.pgm", "P5\n1 1\n65535\nab");
        CHECK_THROWS_AS(load_image(dir / "m.pgm"), format_error);
    }
    SUBCASE("unknown magic") {
        write_bytes(dir / "x.img", "GIF89a whatever");
        CHECK_THROWS_AS(load_image(dir / "x.img"), format_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_image(dir / "absent.pgm"), format_error);
    }
    SUBCASE("corrupt png body") {
        write_bytes(dir / "bad.png", "\x89PNG\r\n\x1a\n truncated");
        CHECK_THROWS_AS(load_image(dir / "bad.png"), format_error);
    }
}

TEST_CASE("extension picks the output format") {
    TempDir dir;
    const auto img = fixtures::noise_image(9, 9, 5);

    save_image(dir / "a.png", img);
    std::ifstream png(dir / "a.png", std::ios::binary);
    char sig[4] = {};
    png.read(sig, 4);
    CHECK(std::string(sig + 1, 3) == "PNG");

    save_image(dir / "b.pgm", img);
    std::ifstream pgm(dir / "b.pgm", std::ios::binary);
    char magic[2] = {};
    pgm.read(magic, 2);
    CHECK(std::string(magic, 2) == "P5");
}
