#include "hicrypt/analysis.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>

#include "hicrypt/lut_cipher.hpp"

namespace hicrypt::analysis {

namespace part = hicrypt::partition;

namespace {

void check_same_shape(const GrayImage& a, const GrayImage& b,
                      const char* what) {
    if (a.width != b.width || a.height != b.height) {
        throw format_error(std::string(what) + ": dimension mismatch " +
                           std::to_string(a.width) + "x" +
                           std::to_string(a.height) + " vs " +
                           std::to_string(b.width) + "x" +
                           std::to_string(b.height));
    }
}

// NPCR/UACI over an index subset of two 7-bit content sequences, compared
// in the 8-bit domain with the low bit zeroed (value << 1).
DiffResult content_subset_diff(std::span<const std::uint8_t> truth7,
                               std::span<const std::uint8_t> other7,
                               const std::vector<std::uint8_t>& mask_bits,
                               int want) {
    std::size_t n = 0;
    std::size_t differing = 0;
    double intensity = 0.0;
    for (std::size_t i = 0; i < truth7.size(); ++i) {
        if ((mask_bits[i] != 0) != (want != 0)) continue;
        ++n;
        const int a = truth7[i] << 1;
        const int b = other7[i] << 1;
        if (a != b) ++differing;
        intensity += std::abs(a - b) / 255.0;
    }
    if (n == 0) return {};
    return {100.0 * static_cast<double>(differing) / static_cast<double>(n),
            100.0 * intensity / static_cast<double>(n)};
}

} // namespace

double npcr(const GrayImage& a, const GrayImage& b) {
    check_same_shape(a, b, "npcr");
    std::size_t differing = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        if (a.pixels[i] != b.pixels[i]) ++differing;
    }
    return 100.0 * static_cast<double>(differing) /
           static_cast<double>(a.pixels.size());
}

double uaci(const GrayImage& a, const GrayImage& b) {
    check_same_shape(a, b, "uaci");
    // Integer accumulation keeps the result exact regardless of pixel order.
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        acc += static_cast<std::uint64_t>(std::abs(a.pixels[i] - b.pixels[i]));
    }
    return 100.0 * static_cast<double>(acc) /
           (255.0 * static_cast<double>(a.pixels.size()));
}

double psnr(const GrayImage& a, const GrayImage& b) {
    check_same_shape(a, b, "psnr");
    std::uint64_t se = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const std::int64_t d = static_cast<std::int64_t>(a.pixels[i]) - b.pixels[i];
        se += static_cast<std::uint64_t>(d * d);
    }
    if (se == 0) return std::numeric_limits<double>::infinity();
    const double mse = static_cast<double>(se) / static_cast<double>(a.pixels.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::horizontal: return "horizontal";
        case Direction::vertical: return "vertical";
        case Direction::diagonal: return "diagonal";
    }
    return "?";
}

double correlation_coefficient(std::span<const double> x,
                               std::span<const double> y) {
    if (x.size() != y.size()) {
        throw format_error("correlation samples differ in length");
    }
    const std::size_t n = x.size();
    if (n == 0) {
        throw format_error("correlation needs at least one pair");
    }
    const double dn = static_cast<double>(n);
    double ex = 0.0, ey = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ex += x[i];
        ey += y[i];
    }
    ex /= dn;
    ey /= dn;
    double dx = 0.0, dy = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dx += (x[i] - ex) * (x[i] - ex);
        dy += (y[i] - ey) * (y[i] - ey);
        cov += (x[i] - ex) * (y[i] - ey);
    }
    dx /= dn;
    dy /= dn;
    cov /= dn;
    if (dx == 0.0 || dy == 0.0) {
        throw format_error("correlation undefined: a sample has zero variance");
    }
    return cov / (std::sqrt(dx) * std::sqrt(dy));
}

CorrResult correlation(const GrayImage& img, Direction d, std::size_t n_pairs,
                       std::uint64_t seed) {
    const int dx = d == Direction::vertical ? 0 : 1;
    const int dy = d == Direction::horizontal ? 0 : 1;
    const int xs = img.width - dx;
    const int ys = img.height - dy;
    if (xs < 1 || ys < 1) {
        throw format_error("image too small for " +
                           std::string(to_string(d)) + " pairs");
    }
    if (n_pairs == 0) {
        throw format_error("correlation needs at least one pair");
    }

    // Positions are drawn by modulo reduction: unlike
    // uniform_int_distribution, it behaves identically on every standard
    // library, so seeded reports stay byte-for-byte reproducible.
    std::mt19937_64 rng(seed);
    CorrResult res;
    res.direction = d;
    res.pairs.reserve(n_pairs);
    std::vector<double> a(n_pairs), b(n_pairs);
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const int x = static_cast<int>(rng() % static_cast<std::uint64_t>(xs));
        const int y = static_cast<int>(rng() % static_cast<std::uint64_t>(ys));
        const std::uint8_t p = img.at(x, y);
        const std::uint8_t q = img.at(x + dx, y + dy);
        res.pairs.push_back({p, q});
        a[i] = p;
        b[i] = q;
    }
    res.r = correlation_coefficient(a, b);
    return res;
}

DiffResult differential_test(const GrayImage& img, const chaos::Key& key,
                             std::optional<Flip> flip,
                             const hierarchy::MaskParams& params) {
    GrayImage modified = img;
    if (flip) {
        if (flip->index >= img.pixels.size()) {
            throw format_error("flip index " + std::to_string(flip->index) +
                               " out of range");
        }
        if (flip->bit < 0 || flip->bit > 7) {
            throw format_error("flip bit must be in [0,7]");
        }
        modified.pixels[flip->index] =
            static_cast<std::uint8_t>(modified.pixels[flip->index] ^
                                      (1u << flip->bit));
    }
    const GrayImage c1 = hierarchy::encrypt_image(img, key, params).image;
    const GrayImage c2 = hierarchy::encrypt_image(modified, key, params).image;
    return {npcr(c1, c2), uaci(c1, c2)};
}

HistogramResult histogram(std::span<const std::uint8_t> symbols,
                          int alphabet) {
    if (alphabet < 2 || alphabet > 256) {
        throw format_error("histogram alphabet must be in [2,256]");
    }
    if (symbols.empty()) {
        throw format_error("histogram of an empty sequence");
    }
    HistogramResult res;
    res.alphabet = alphabet;
    for (const std::uint8_t s : symbols) {
        if (s >= alphabet) {
            throw format_error("symbol " + std::to_string(s) +
                               " outside alphabet " + std::to_string(alphabet));
        }
        ++res.counts[s];
    }
    const double expected =
        static_cast<double>(symbols.size()) / static_cast<double>(alphabet);
    double chi = 0.0;
    for (int v = 0; v < alphabet; ++v) {
        const double d = static_cast<double>(res.counts[v]) - expected;
        chi += d * d / expected;
    }
    res.chi_square = chi;
    res.dof = alphabet - 1;
    const boost::math::chi_squared dist(res.dof);
    res.p_value = boost::math::cdf(boost::math::complement(dist, chi));
    return res;
}

HistogramResult histogram(const GrayImage& img, int alphabet) {
    return histogram(std::span<const std::uint8_t>(img.pixels), alphabet);
}

std::string_view to_string(SubKeyField f) {
    switch (f) {
        case SubKeyField::x0: return "x0";
        case SubKeyField::mu0: return "mu0";
        case SubKeyField::x0_xor: return "x0_xor";
        case SubKeyField::mu0_xor: return "mu0_xor";
    }
    return "?";
}

chaos::Key perturb_key(const chaos::Key& key, const KeyPerturbation& p) {
    chaos::Key k = key;
    chaos::SubKey* sk = nullptr;
    switch (p.subkey) {
        case 1: sk = &k.sk1; break;
        case 2: sk = &k.sk2; break;
        case 3: sk = &k.sk3; break;
        default:
            throw format_error("sub-key index must be 1, 2 or 3");
    }
    switch (p.field) {
        case SubKeyField::x0: sk->x0 += p.epsilon; break;
        case SubKeyField::mu0: sk->mu0 += p.epsilon; break;
        case SubKeyField::x0_xor: sk->x0_xor += p.epsilon; break;
        case SubKeyField::mu0_xor: sk->mu0_xor += p.epsilon; break;
    }
    chaos::validate_key(k);
    return k;
}

std::vector<KeyPerturbation> default_perturbations() {
    std::vector<KeyPerturbation> out;
    for (int sk = 1; sk <= 3; ++sk) {
        out.push_back({sk, SubKeyField::x0, 1e-10});
    }
    for (int sk = 1; sk <= 3; ++sk) {
        for (SubKeyField f : {SubKeyField::x0, SubKeyField::mu0,
                              SubKeyField::x0_xor, SubKeyField::mu0_xor}) {
            out.push_back({sk, f, 1e-15});
        }
    }
    return out;
}

std::vector<SensitivityRow> key_sensitivity_suite(
    const GrayImage& plain, const chaos::Key& key,
    std::span<const KeyPerturbation> deltas,
    const hierarchy::MaskParams& params) {
    const hierarchy::Cryptogram crypt =
        hierarchy::encrypt_image(plain, key, params);
    const part::EdgeMask true_mask = part::dilate(
        part::canny(plain, params.canny), params.dilation_radius);
    const std::vector<std::uint8_t> truth7 = part::split_planes(plain).msb7;

    std::vector<SensitivityRow> rows;
    rows.reserve(deltas.size());
    for (const KeyPerturbation& delta : deltas) {
        const chaos::Key wrong_key = perturb_key(key, delta);
        const GrayImage wrong = hierarchy::decrypt_image(crypt, wrong_key);
        const part::Planes wp = part::split_planes(wrong);

        SensitivityRow row;
        row.change = delta;
        row.contour = content_subset_diff(truth7, wp.msb7, true_mask.bits, 1);
        row.region = content_subset_diff(truth7, wp.msb7, true_mask.bits, 0);
        {
            std::size_t differing = 0;
            double intensity = 0.0;
            for (std::size_t i = 0; i < truth7.size(); ++i) {
                const int a = truth7[i] << 1;
                const int b = wp.msb7[i] << 1;
                if (a != b) ++differing;
                intensity += std::abs(a - b) / 255.0;
            }
            const double dn = static_cast<double>(truth7.size());
            row.overall = {100.0 * static_cast<double>(differing) / dn,
                           100.0 * intensity / dn};
        }
        {
            std::size_t differing = 0;
            for (std::size_t i = 0; i < wp.lsb.size(); ++i) {
                if ((wp.lsb[i] != 0) != (true_mask.bits[i] != 0)) ++differing;
            }
            const double m = 100.0 * static_cast<double>(differing) /
                             static_cast<double>(wp.lsb.size());
            // in the {0,255} rendering every differing bit contributes a
            // full-scale intensity change, so UACI equals NPCR
            row.mask = {m, m};
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

AttackResult keystream_attack(const GrayImage& plain, const GrayImage& cipher,
                              const GrayImage& target,
                              const GrayImage* target_truth) {
    check_same_shape(plain, cipher, "attack pair");
    check_same_shape(plain, target, "attack target");
    AttackResult res;
    res.keystream.resize(plain.pixels.size());
    for (std::size_t i = 0; i < plain.pixels.size(); ++i) {
        res.keystream[i] =
            static_cast<std::uint8_t>(plain.pixels[i] ^ cipher.pixels[i]);
    }
    res.recovered = GrayImage(target.width, target.height);
    for (std::size_t i = 0; i < target.pixels.size(); ++i) {
        res.recovered.pixels[i] =
            static_cast<std::uint8_t>(target.pixels[i] ^ res.keystream[i]);
    }
    if (target_truth != nullptr) {
        res.npcr_vs_truth = npcr(res.recovered, *target_truth);
        res.uaci_vs_truth = uaci(res.recovered, *target_truth);
    }
    return res;
}

} // namespace hicrypt::analysis
