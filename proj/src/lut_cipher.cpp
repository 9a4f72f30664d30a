#include "hicrypt/lut_cipher.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace hicrypt::lut_cipher {

namespace {

bool is_pow2(int v) {
    return v > 0 && (v & (v - 1)) == 0;
}

void check_symbol(int v, int alphabet, const char* what) {
    if (v < 0 || v >= alphabet) {
        throw crypto_error(std::string(what) + " symbol " + std::to_string(v) +
                           " outside [0," + std::to_string(alphabet) + ")");
    }
}

} // namespace

Lut lut_from_draws(std::span<const double> draws) {
    const std::size_t n = draws.size();
    if (n < 2 || n > 256) {
        throw crypto_error("table size " + std::to_string(n) +
                           " outside [2,256]");
    }
    std::vector<std::uint16_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint16_t a, std::uint16_t b) {
                         return draws[a] < draws[b];
                     });
    Lut lut;
    lut.alphabet = static_cast<int>(n);
    lut.table.resize(n);
    lut.inverse.resize(n);
    for (std::size_t rank = 0; rank < n; ++rank) {
        lut.table[order[rank]] = static_cast<std::uint8_t>(rank);
        lut.inverse[rank] = static_cast<std::uint8_t>(order[rank]);
    }
    return lut;
}

Lut build_lut(chaos::ChaosStream& stream, int alphabet) {
    std::vector<double> draws(static_cast<std::size_t>(alphabet));
    for (double& d : draws) {
        d = stream.next_real();
    }
    return lut_from_draws(draws);
}

CipherState::CipherState(const chaos::SubKey& sk, int alphabet,
                         std::uint64_t burn_in)
    : key_stream_(sk.x0, sk.mu0, burn_in),
      xor_stream_(sk.x0_xor, sk.mu0_xor, burn_in),
      alphabet_(alphabet) {
    if (!is_pow2(alphabet) || alphabet < 2 || alphabet > 256) {
        throw crypto_error("alphabet must be a power of two in [2,256], got " +
                           std::to_string(alphabet));
    }
    lut_ = build_lut(key_stream_, alphabet_);
}

void CipherState::advance_schedule() {
    ++processed_;
    if (processed_ % kRebuildPeriod == 0) {
        lut_ = build_lut(key_stream_, alphabet_);
    }
}

int CipherState::encrypt_symbol(int p) {
    check_symbol(p, alphabet_, "plaintext");
    const int k = xor_stream_.next_symbol(alphabet_);
    const int c = lut_.table[static_cast<std::size_t>(p ^ k ^ feedback_)];
    feedback_ = c;
    advance_schedule();
    return c;
}

int CipherState::decrypt_symbol(int c) {
    check_symbol(c, alphabet_, "ciphertext");
    const int k = xor_stream_.next_symbol(alphabet_);
    const int p = lut_.inverse[static_cast<std::size_t>(c)] ^ k ^ feedback_;
    feedback_ = c;
    advance_schedule();
    return p;
}

void CipherState::skip_symbols(std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i) {
        xor_stream_.next_symbol(alphabet_);
        advance_schedule();
    }
}

std::vector<std::uint8_t> encrypt_sequence(const chaos::SubKey& sk,
                                           std::span<const std::uint8_t> data,
                                           int alphabet) {
    chaos::validate_subkey(sk);
    std::vector<std::uint8_t> out(data.begin(), data.end());
    CipherState st(sk, alphabet);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(st.encrypt_symbol(out[i]));
    }
    st.reset_feedback();
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = static_cast<std::uint8_t>(st.encrypt_symbol(out[i]));
    }
    return out;
}

std::vector<std::uint8_t> decrypt_sequence(const chaos::SubKey& sk,
                                           std::span<const std::uint8_t> data,
                                           int alphabet) {
    chaos::validate_subkey(sk);
    std::vector<std::uint8_t> out(data.begin(), data.end());

    // Undo the return pass first. Its keystream position starts right after
    // the forward pass, so fast-forward a fresh state by out.size() symbols.
    CipherState tail(sk, alphabet);
    tail.skip_symbols(out.size());
    tail.reset_feedback();
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = static_cast<std::uint8_t>(tail.decrypt_symbol(out[i]));
    }

    CipherState head(sk, alphabet);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(head.decrypt_symbol(out[i]));
    }
    return out;
}

} // namespace hicrypt::lut_cipher
