#include "hicrypt/chaos.hpp"

#include <bit>
#include <sstream>
#include <string>

namespace hicrypt::chaos {

namespace {

void put_f64_le(std::uint8_t* out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
        out[i] = static_cast<std::uint8_t>(bits >> (8 * i));
    }
}

double get_f64_le(const std::uint8_t* in) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
        bits |= static_cast<std::uint64_t>(in[i]) << (8 * i);
    }
    return std::bit_cast<double>(bits);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void check_field(double v, bool is_x, std::string_view field,
                 std::string_view label) {
    const bool ok = is_x ? (v > 0.0 && v < 1.0)
                         : (v > kMuChaoticMin && v <= kMuMax);
    if (!ok) {
        std::string where = label.empty()
            ? std::string(field)
            : std::string(label) + "." + std::string(field);
        throw crypto_error("key field " + where + " = " + fmt(v) +
                           (is_x ? " outside (0,1)" : " outside (3.57,4]"));
    }
}

Key key_from_fields(const double (&f)[12]) {
    Key k{
        SubKey{f[0], f[1], f[2], f[3]},
        SubKey{f[4], f[5], f[6], f[7]},
        SubKey{f[8], f[9], f[10], f[11]},
    };
    validate_key(k);
    return k;
}

} // namespace

double logistic_step(double x, double mu) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw crypto_error("logistic state x = " + fmt(x) + " outside [0,1]");
    }
    if (!(mu > 0.0 && mu <= 4.0)) {
        throw crypto_error("logistic parameter mu = " + fmt(mu) +
                           " outside (0,4]");
    }
    return mu * (x * (1.0 - x));
}

void validate_subkey(const SubKey& sk, std::string_view label) {
    check_field(sk.x0, true, "x0", label);
    check_field(sk.mu0, false, "mu0", label);
    check_field(sk.x0_xor, true, "x0_xor", label);
    check_field(sk.mu0_xor, false, "mu0_xor", label);
}

void validate_key(const Key& k) {
    validate_subkey(k.sk1, "sk1");
    validate_subkey(k.sk2, "sk2");
    validate_subkey(k.sk3, "sk3");
}

std::array<std::uint8_t, kKeyBytes> serialize_key(const Key& k) {
    std::array<std::uint8_t, kKeyBytes> out{};
    const double fields[12] = {
        k.sk1.x0, k.sk1.mu0, k.sk1.x0_xor, k.sk1.mu0_xor,
        k.sk2.x0, k.sk2.mu0, k.sk2.x0_xor, k.sk2.mu0_xor,
        k.sk3.x0, k.sk3.mu0, k.sk3.x0_xor, k.sk3.mu0_xor,
    };
    for (int i = 0; i < 12; ++i) {
        put_f64_le(out.data() + 8 * i, fields[i]);
    }
    return out;
}

Key parse_key(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kKeyBytes) {
        throw format_error("key must be exactly 96 bytes, got " +
                           std::to_string(bytes.size()));
    }
    double f[12];
    for (int i = 0; i < 12; ++i) {
        f[i] = get_f64_le(bytes.data() + 8 * i);
    }
    return key_from_fields(f);
}

Key parse_key_text(std::string_view text) {
    std::string normalized(text);
    for (char& c : normalized) {
        if (c == ',') c = ' ';
    }
    std::istringstream is(normalized);
    double f[12];
    for (int i = 0; i < 12; ++i) {
        if (!(is >> f[i])) {
            throw format_error("text key needs 12 numbers, found " +
                               std::to_string(i));
        }
    }
    std::string trailing;
    if (is >> trailing) {
        throw format_error("text key has trailing content: '" + trailing + "'");
    }
    return key_from_fields(f);
}

ChaosStream::ChaosStream(double x0, double mu, std::uint64_t burn_in)
    : x_(x0), mu_(mu) {
    if (!(x0 > 0.0 && x0 < 1.0)) {
        throw crypto_error("stream x0 = " + fmt(x0) + " outside (0,1)");
    }
    if (!(mu > kMuChaoticMin && mu <= kMuMax)) {
        throw crypto_error("stream mu = " + fmt(mu) + " outside (3.57,4]");
    }
    for (std::uint64_t i = 0; i < burn_in; ++i) {
        x_ = logistic_step(x_, mu_);
    }
}

double ChaosStream::next_real() {
    x_ = logistic_step(x_, mu_);
    ++emitted_;
    return x_;
}

int ChaosStream::next_symbol(int alphabet) {
    if (alphabet < 2 || alphabet > 256) {
        throw crypto_error("alphabet " + std::to_string(alphabet) +
                           " outside [2,256]");
    }
    const double x = next_real();
    const int s = static_cast<int>(x * static_cast<double>(alphabet));
    return s >= alphabet ? alphabet - 1 : s;
}

} // namespace hicrypt::chaos
