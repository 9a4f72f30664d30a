#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "hicrypt/lut_cipher.hpp"

using namespace hicrypt;
using lut_cipher::CipherState;
using lut_cipher::Lut;

namespace {

bool is_permutation_of_alphabet(const Lut& lut) {
    std::vector<std::uint8_t> sorted(lut.table.begin(), lut.table.end());
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < lut.alphabet; ++i) {
        if (sorted[static_cast<std::size_t>(i)] != i) return false;
        if (lut.inverse[lut.table[static_cast<std::size_t>(i)]] != i) return false;
    }
    return true;
}

std::vector<std::uint8_t> random_symbols(std::mt19937_64& rng, std::size_t n,
                                         int alphabet) {
    std::vector<std::uint8_t> v(n);
    for (auto& s : v) {
        s = static_cast<std::uint8_t>(rng() % static_cast<std::uint64_t>(alphabet));
    }
    return v;
}

double diff_fraction(const std::vector<std::uint8_t>& a,
                     const std::vector<std::uint8_t>& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) ++d;
    }
    return static_cast<double>(d) / static_cast<double>(a.size());
}

} // namespace

TEST_CASE("draw ranking builds the expected tables") {
    const double inc[] = {0.1, 0.2, 0.3, 0.4};
    CHECK(lut_cipher::lut_from_draws(inc).table ==
          std::vector<std::uint8_t>{0, 1, 2, 3});

    const double dec[] = {0.9, 0.7, 0.5, 0.3};
    CHECK(lut_cipher::lut_from_draws(dec).table ==
          std::vector<std::uint8_t>{3, 2, 1, 0});

    const double mixed[] = {0.9, 0.1, 0.5};
    CHECK(lut_cipher::lut_from_draws(mixed).table ==
          std::vector<std::uint8_t>{2, 0, 1});

    // Ties rank by draw position.
    const double tied[] = {0.5, 0.5, 0.1};
    CHECK(lut_cipher::lut_from_draws(tied).table ==
          std::vector<std::uint8_t>{1, 2, 0});
}

TEST_CASE("draw ranking rejects unusable sizes") {
    const double one[] = {0.5};
    CHECK_THROWS_AS(lut_cipher::lut_from_draws(one), crypto_error);
    const std::vector<double> many(257, 0.5);
    CHECK_THROWS_AS(lut_cipher::lut_from_draws(many), crypto_error);
}

TEST_CASE("table construction consumes one draw per entry") {
    chaos::ChaosStream s(0.45, 3.801, 0);
    const Lut lut = lut_cipher::build_lut(s, 128);
    CHECK(s.emitted() == 128);
    CHECK(lut.alphabet == 128);
    CHECK(is_permutation_of_alphabet(lut));
}

TEST_CASE("cipher state enforces power-of-two alphabets") {
    const auto sk = fixtures::reference_key().sk1;
    CHECK_THROWS_AS(CipherState(sk, 3), crypto_error);
    CHECK_THROWS_AS(CipherState(sk, 0), crypto_error);
    CHECK_THROWS_AS(CipherState(sk, 512), crypto_error);
    CHECK_NOTHROW(CipherState(sk, 2));
    CHECK_NOTHROW(CipherState(sk, 256));
}

TEST_CASE("per-symbol law is substitution of the masked, fed-back symbol") {
    const auto sk = fixtures::reference_key().sk1;
    CipherState st(sk, 128);

    // Replay the masking stream independently to predict the outputs.
    chaos::ChaosStream xor_stream(sk.x0_xor, sk.mu0_xor);
    int feedback = 0;
    for (int p : {17, 0, 127, 64, 17}) {
        const int k = xor_stream.next_symbol(128);
        const int expected = st.lut().table[static_cast<std::size_t>(p ^ k ^ feedback)];
        const int c = st.encrypt_symbol(p);
        CHECK(c == expected);
        feedback = c;
    }
}

TEST_CASE("symbol range is validated") {
    const auto sk = fixtures::reference_key().sk1;
    CipherState st(sk, 128);
    CHECK_THROWS_AS(st.encrypt_symbol(128), crypto_error);
    CHECK_THROWS_AS(st.encrypt_symbol(-1), crypto_error);
    CHECK_THROWS_AS(st.decrypt_symbol(128), crypto_error);
}

TEST_CASE("table is rebuilt after every rebuild period") {
    const auto sk = fixtures::reference_key().sk1;
    CipherState st(sk, 128);
    const auto initial = st.lut().table;

    for (std::uint64_t i = 0; i < lut_cipher::kRebuildPeriod - 1; ++i) {
        st.encrypt_symbol(5);
    }
    CHECK(st.lut().table == initial);

    st.encrypt_symbol(5);
    CHECK(st.lut().table != initial);
    CHECK(is_permutation_of_alphabet(st.lut()));
}

TEST_CASE("rebuilt tables stay bijective") {
    const auto sk = fixtures::reference_key().sk2;
    CipherState st(sk, 256);
    for (int rebuild = 0; rebuild < 100; ++rebuild) {
        for (std::uint64_t i = 0; i < lut_cipher::kRebuildPeriod; ++i) {
            st.encrypt_symbol(static_cast<int>(i & 0xff));
        }
        REQUIRE(is_permutation_of_alphabet(st.lut()));
    }
}

TEST_CASE("encrypt and decrypt states stay synchronized") {
    std::mt19937_64 rng(7);
    const auto sk = fixtures::random_subkey(rng);
    CipherState enc(sk, 256);
    CipherState dec(sk, 256);
    for (int i = 0; i < 2000; ++i) {
        const int p = static_cast<int>(rng() & 0xff);
        const int c = enc.encrypt_symbol(p);
        REQUIRE(dec.decrypt_symbol(c) == p);
    }
    CHECK(enc.feedback() == dec.feedback());
    CHECK(enc.lut().table == dec.lut().table);
}

TEST_CASE("skip_symbols reproduces the schedule without data") {
    std::mt19937_64 rng(13);
    const auto sk = fixtures::random_subkey(rng);
    const auto data = random_symbols(rng, 600, 128);

    CipherState walked(sk, 128);
    for (const auto p : data) {
        walked.encrypt_symbol(p);
    }
    CipherState skipped(sk, 128);
    skipped.skip_symbols(data.size());

    CHECK(skipped.processed() == walked.processed());
    CHECK(skipped.lut().table == walked.lut().table);

    // With feedback aligned, the very next symbol must encrypt identically.
    walked.reset_feedback();
    skipped.reset_feedback();
    CHECK(walked.encrypt_symbol(42) == skipped.encrypt_symbol(42));
}

TEST_CASE("sequence encryption round-trips") {
    std::mt19937_64 rng(29);

    SUBCASE("empty and single-symbol sequences") {
        const auto sk = fixtures::reference_key().sk3;
        CHECK(lut_cipher::encrypt_sequence(sk, {}, 128).empty());
        CHECK(lut_cipher::decrypt_sequence(sk, {}, 128).empty());

        const std::vector<std::uint8_t> one{93};
        const auto c = lut_cipher::encrypt_sequence(sk, one, 128);
        CHECK(c.size() == 1);
        CHECK(lut_cipher::decrypt_sequence(sk, c, 128) == one);
    }

    SUBCASE("random keys, lengths, and alphabets") {
        const int alphabets[] = {2, 128, 256};
        for (int trial = 0; trial < 300; ++trial) {
            const auto sk = fixtures::random_subkey(rng);
            const int alphabet = alphabets[trial % 3];
            const auto data =
                random_symbols(rng, 1 + rng() % 300, alphabet);
            const auto c = lut_cipher::encrypt_sequence(sk, data, alphabet);
            REQUIRE(c.size() == data.size());
            REQUIRE(lut_cipher::decrypt_sequence(sk, c, alphabet) == data);
        }
    }
}

TEST_CASE("sequence encryption rejects out-of-alphabet symbols") {
    const auto sk = fixtures::reference_key().sk1;
    const std::vector<std::uint8_t> data{5, 200, 5};
    CHECK_THROWS_AS(lut_cipher::encrypt_sequence(sk, data, 128), crypto_error);
}

TEST_CASE("one flipped symbol reshapes the whole ciphertext") {
    std::mt19937_64 rng(31);
    const auto sk = fixtures::reference_key().sk1;

    std::size_t differing = 0, total = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto data = random_symbols(rng, 2048, 128);
        const auto c1 = lut_cipher::encrypt_sequence(sk, data, 128);

        // Alternate between the first symbol and a random interior one; the
        // return pass must carry either change across every position.
        const std::size_t at = (trial % 2 == 0) ? 0 : 1 + rng() % (data.size() - 1);
        data[at] = static_cast<std::uint8_t>(data[at] ^ (1 + rng() % 127));
        const auto c2 = lut_cipher::encrypt_sequence(sk, data, 128);

        for (std::size_t i = 0; i < c1.size(); ++i) {
            differing += (c1[i] != c2[i]);
        }
        total += c1.size();
    }
    // Two independent uniform symbols agree with probability 1/128, so the
    // expected differing fraction is about 0.992.
    CHECK(static_cast<double>(differing) / static_cast<double>(total) >= 0.99);
}

TEST_CASE("nearby keys produce unrelated ciphertexts") {
    std::mt19937_64 rng(37);
    auto sk = fixtures::reference_key().sk1;
    const auto data = random_symbols(rng, 65536, 128);

    const auto c1 = lut_cipher::encrypt_sequence(sk, data, 128);
    sk.x0 += 1e-10;
    const auto c2 = lut_cipher::encrypt_sequence(sk, data, 128);

    CHECK(diff_fraction(c1, c2) >= 0.99);
}
