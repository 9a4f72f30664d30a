#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hicrypt/chaos.hpp"

namespace hicrypt::lut_cipher {

// How many symbols a CipherState processes before its substitution table is
// rebuilt from fresh chaotic draws. A per-symbol rebuild would cost
// O(alphabet log alphabet) per symbol for no measurable gain.
inline constexpr std::uint64_t kRebuildPeriod = 256;

// A substitution table over [0, alphabet) together with its inverse.
struct Lut {
    std::vector<std::uint8_t> table;
    std::vector<std::uint8_t> inverse;
    int alphabet = 0;
};

// Ranks the draws ascending, ties broken by draw index, so table[i] is the
// rank of draws[i]. Any sequence of reals yields a permutation.
Lut lut_from_draws(std::span<const double> draws);

// Draws `alphabet` reals from the stream and ranks them.
Lut build_lut(chaos::ChaosStream& stream, int alphabet);

// One sub-cryptosystem's working state. Each symbol is masked with a
// chaotic draw and the previous ciphertext symbol, then substituted:
//
//   c = table[p ^ k ^ feedback],  feedback := c
//
// The (x0, mu0) stream builds and periodically rebuilds the table; the
// (x0_xor, mu0_xor) stream supplies the per-symbol mask k. The alphabet must
// be a power of two so XOR stays closed over it.
class CipherState {
public:
    CipherState(const chaos::SubKey& sk, int alphabet,
                std::uint64_t burn_in = chaos::kDefaultBurnIn);

    int encrypt_symbol(int p);
    int decrypt_symbol(int c);

    // Advances the mask stream and the rebuild schedule exactly as n
    // encrypt/decrypt calls would, without touching feedback. Both draws
    // depend only on position, never on data, so a decryptor can fast-forward
    // to any point of the keystream.
    void skip_symbols(std::uint64_t n);

    // Resets the feedback chain to its public initial value (zero).
    void reset_feedback() { feedback_ = 0; }

    const Lut& lut() const { return lut_; }
    int feedback() const { return feedback_; }
    int alphabet() const { return alphabet_; }
    std::uint64_t processed() const { return processed_; }

private:
    void advance_schedule();

    chaos::ChaosStream key_stream_;
    chaos::ChaosStream xor_stream_;
    Lut lut_;
    int alphabet_;
    int feedback_ = 0;
    std::uint64_t processed_ = 0;
};

// Encrypts a whole message in two passes over a single evolving state: first
// head to tail, then (after a feedback reset) tail to head. A one-pass
// feedback cipher leaves everything before a plaintext change untouched; the
// return pass carries every change back across the whole message, so any
// single-symbol difference reshapes the entire ciphertext.
std::vector<std::uint8_t> encrypt_sequence(const chaos::SubKey& sk,
                                           std::span<const std::uint8_t> data,
                                           int alphabet);

std::vector<std::uint8_t> decrypt_sequence(const chaos::SubKey& sk,
                                           std::span<const std::uint8_t> data,
                                           int alphabet);

} // namespace hicrypt::lut_cipher
