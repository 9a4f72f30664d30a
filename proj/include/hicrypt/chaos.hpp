#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "hicrypt/errors.hpp"

namespace hicrypt::chaos {

// Control parameters below ~3.57 put the logistic map into periodic windows
// that make terrible keystreams, so key validation rejects them outright.
inline constexpr double kMuChaoticMin = 3.57;
inline constexpr double kMuMax = 4.0;

// Iterations discarded before a stream emits anything, so that short-lived
// transients never reach the cipher.
inline constexpr std::uint64_t kDefaultBurnIn = 1000;

inline constexpr std::size_t kSubKeyBytes = 32;
inline constexpr std::size_t kKeyBytes = 96;

// One logistic-map iteration, evaluated as mu * (x * (1 - x)) in binary64.
// The grouping is part of the cipher definition: ciphertexts are only
// portable if every implementation rounds the same intermediate results.
double logistic_step(double x, double mu);

// Parameters for one sub-cryptosystem: (x0, mu0) drive the substitution
// table stream, (x0_xor, mu0_xor) drive the masking stream.
struct SubKey {
    double x0;
    double mu0;
    double x0_xor;
    double mu0_xor;

    bool operator==(const SubKey&) const = default;
};

// Throws crypto_error naming the offending field (prefixed with `label` when
// given) unless x-values lie in (0,1) and mu-values in (3.57,4].
void validate_subkey(const SubKey& sk, std::string_view label = {});

// The full hierarchical key: sk1 encrypts contour pixels, sk2 region pixels,
// sk3 the embedded mask plane.
struct Key {
    SubKey sk1;
    SubKey sk2;
    SubKey sk3;

    bool operator==(const Key&) const = default;
};

void validate_key(const Key& k);

// Key files are 96 bytes: twelve little-endian binary64 values in the order
// sk1.x0, sk1.mu0, sk1.x0_xor, sk1.mu0_xor, then sk2, then sk3.
std::array<std::uint8_t, kKeyBytes> serialize_key(const Key& k);
Key parse_key(std::span<const std::uint8_t> bytes);

// Plain-text alternative: twelve numbers separated by whitespace or commas,
// same order as the binary layout.
Key parse_key_text(std::string_view text);

// A deterministic logistic-map trajectory. Construction runs the burn-in;
// afterwards every call advances exactly one iteration, so two streams with
// equal parameters stay bit-identical forever.
class ChaosStream {
public:
    ChaosStream(double x0, double mu, std::uint64_t burn_in = kDefaultBurnIn);

    // Advances one step and returns the new state.
    double next_real();

    // Advances one step and quantizes the new state to floor(x * alphabet),
    // clamped to alphabet - 1 so x = 1.0 stays in range.
    int next_symbol(int alphabet);

    double state() const { return x_; }
    double mu() const { return mu_; }
    std::uint64_t emitted() const { return emitted_; }

private:
    double x_;
    double mu_;
    std::uint64_t emitted_ = 0;
};

} // namespace hicrypt::chaos
