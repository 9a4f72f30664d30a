#pragma once

#include <cstdint>
#include <random>

#include "hicrypt/chaos.hpp"
#include "hicrypt/image.hpp"

namespace fixtures {

// The fixed key used by cross-module tests and the golden vectors.
hicrypt::chaos::Key reference_key();

// Synthetic grayscale scene: a smooth illumination gradient with soft
// elliptical blobs, box-blurred twice. Integer arithmetic only, so a given
// (size, seed) produces identical pixels on every platform. Blurred blobs
// give the strong adjacent-pixel correlation and clean Canny contours the
// statistical tests need.
hicrypt::GrayImage phantom(int width, int height, std::uint64_t seed);

// The 16x16 scene behind the frozen cryptogram golden: a bright disk on a
// diagonal ramp.
hicrypt::GrayImage golden16();

// Uniform-noise image for round-trip stress.
hicrypt::GrayImage noise_image(int width, int height, std::uint64_t seed);

// Uniform draws over the valid parameter ranges.
hicrypt::chaos::SubKey random_subkey(std::mt19937_64& rng);
hicrypt::chaos::Key random_key(std::mt19937_64& rng);

// Position-wise XOR stream cipher with a pad derived only from the sub-key,
// so encrypting two images under one key reuses the pad. Deliberately weak:
// validates that the keystream-attack harness does succeed against a cipher
// with no feedback.
hicrypt::GrayImage xor_stub_encrypt(const hicrypt::GrayImage& img,
                                    const hicrypt::chaos::SubKey& sk);

} // namespace fixtures
