// Command-line front end: key generation, image encryption/decryption with
// tiered access rights, the statistical evaluation battery, and the
// known-plaintext keystream attack harness.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hicrypt/analysis.hpp"
#include "hicrypt/chaos.hpp"
#include "hicrypt/hierarchy.hpp"
#include "hicrypt/image.hpp"
#include "hicrypt/lut_cipher.hpp"
#include "hicrypt/partition.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using namespace hicrypt;

constexpr int kExitUsage = 1;
constexpr int kExitFormat = 2;
constexpr int kExitCrypto = 3;

std::vector<std::uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw format_error("cannot open '" + path.string() + "'");
    }
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>()};
    return bytes;
}

// A 96-byte file is treated as a binary key; anything else (or a 96-byte
// file whose values fail validation) is parsed as the 12-number text form.
chaos::Key load_key(const fs::path& path) {
    const std::vector<std::uint8_t> bytes = read_file(path);
    if (bytes.size() == chaos::kKeyBytes) {
        try {
            return chaos::parse_key(bytes);
        } catch (const crypto_error& binary_err) {
            try {
                return chaos::parse_key_text(std::string(bytes.begin(),
                                                         bytes.end()));
            } catch (const std::exception&) {
                throw binary_err;
            }
        }
    }
    return chaos::parse_key_text(std::string(bytes.begin(), bytes.end()));
}

void write_json(const json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw format_error("cannot create '" + out_path + "'");
    }
    out << text;
    if (!out) {
        throw format_error("write failed for '" + out_path + "'");
    }
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// -------------------------------------------------------------- keygen ----

struct KeygenConfig {
    std::string out_path;
    std::vector<double> values;
    bool text = false;
};

chaos::SubKey random_subkey(std::mt19937_64& rng) {
    auto unit = [&rng] {
        for (;;) {
            // 53 random bits; the value is always < 1, only 0 needs a redraw
            const double v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (v > 0.0) return v;
        }
    };
    auto mu = [&rng] {
        const double u =
            static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0,1]
        return chaos::kMuChaoticMin +
               u * (chaos::kMuMax - chaos::kMuChaoticMin);
    };
    const double x0 = unit();
    const double m0 = mu();
    const double xx = unit();
    const double mx = mu();
    return {x0, m0, xx, mx};
}

int run_keygen(const KeygenConfig& cfg) {
    chaos::Key key;
    if (!cfg.values.empty()) {
        const auto& v = cfg.values;
        key = chaos::Key{{v[0], v[1], v[2], v[3]},
                         {v[4], v[5], v[6], v[7]},
                         {v[8], v[9], v[10], v[11]}};
        chaos::validate_key(key);
    } else {
        std::random_device rd;
        std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
        std::mt19937_64 rng(seq);
        key = chaos::Key{random_subkey(rng), random_subkey(rng),
                         random_subkey(rng)};
    }

    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) {
        throw format_error("cannot create '" + cfg.out_path + "'");
    }
    if (cfg.text) {
        out.precision(17);
        const chaos::SubKey* sks[] = {&key.sk1, &key.sk2, &key.sk3};
        for (const auto* sk : sks) {
            out << sk->x0 << " " << sk->mu0 << " " << sk->x0_xor << " "
                << sk->mu0_xor << "\n";
        }
    } else {
        const auto bytes = chaos::serialize_key(key);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    }
    if (!out) {
        throw format_error("write failed for '" + cfg.out_path + "'");
    }
    return 0;
}

// ----------------------------------------------------- encrypt/decrypt ----

struct CryptConfig {
    std::string in_path;
    std::string out_path;
    std::string key_path;
    hierarchy::MaskParams mask;
    std::string mask_out;
    std::string rights = "sk1,sk2,sk3";
};

std::optional<hierarchy::AccessRights> parse_rights(const std::string& text) {
    hierarchy::AccessRights rights{false, false, false};
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "sk1") {
            rights.has_sk1 = true;
        } else if (tok == "sk2") {
            rights.has_sk2 = true;
        } else if (tok == "sk3") {
            rights.has_sk3 = true;
        } else {
            return std::nullopt;
        }
    }
    return rights;
}

int run_encrypt(const CryptConfig& cfg) {
    if (!(cfg.mask.canny.low > 0.0 && cfg.mask.canny.low < cfg.mask.canny.high)) {
        std::cerr << "error: thresholds must satisfy 0 < low < high\n";
        return kExitUsage;
    }
    const GrayImage img = load_image(cfg.in_path);
    const chaos::Key key = load_key(cfg.key_path);
    const hierarchy::Cryptogram crypt =
        hierarchy::encrypt_image(img, key, cfg.mask);
    save_image(cfg.out_path, crypt.image);
    if (!cfg.mask_out.empty()) {
        const auto mask = partition::dilate(
            partition::canny(img, cfg.mask.canny), cfg.mask.dilation_radius);
        save_image(cfg.mask_out, partition::mask_to_image(mask));
    }
    return 0;
}

int run_decrypt(const CryptConfig& cfg) {
    const auto rights = parse_rights(cfg.rights);
    if (!rights) {
        std::cerr << "error: --rights accepts a comma list of sk1, sk2, sk3\n";
        return kExitUsage;
    }
    const GrayImage img = load_image(cfg.in_path);
    const chaos::Key key = load_key(cfg.key_path);
    const GrayImage plain =
        hierarchy::decrypt_partial(hierarchy::Cryptogram{img}, key, *rights);
    save_image(cfg.out_path, plain);
    return 0;
}

// ------------------------------------------------------------- analyze ----

struct AnalyzeConfig {
    std::string plain_path;
    std::string key_path;
    std::string report_out;
    std::string csv_dir;
    std::uint64_t seed = 1;
    std::size_t pairs = 2500;
    int flips = 20;
    std::vector<std::string> select = {"histogram", "correlation",
                                       "differential", "sensitivity"};
};

json histogram_json(const analysis::HistogramResult& h) {
    return json{{"alphabet", h.alphabet},
                {"chi_square", h.chi_square},
                {"dof", h.dof},
                {"p_value", h.p_value},
                {"uniform_at_0.01", h.p_value >= 0.01}};
}

void write_csv(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw format_error("cannot create '" + path.string() + "'");
    }
    out << body;
    if (!out) {
        throw format_error("write failed for '" + path.string() + "'");
    }
}

std::string histogram_csv(const analysis::HistogramResult& h) {
    std::string body = "value,count\n";
    for (int v = 0; v < h.alphabet; ++v) {
        body += std::to_string(v) + "," + std::to_string(h.counts[v]) + "\n";
    }
    return body;
}

std::string scatter_csv(const std::vector<analysis::CorrResult>& results) {
    std::string body = "direction,x,y\n";
    for (const auto& res : results) {
        for (const auto& p : res.pairs) {
            body += std::string(analysis::to_string(res.direction)) + "," +
                    std::to_string(p[0]) + "," + std::to_string(p[1]) + "\n";
        }
    }
    return body;
}

int run_analyze(const AnalyzeConfig& cfg) {
    const GrayImage plain = load_image(cfg.plain_path);
    const chaos::Key key = load_key(cfg.key_path);
    const bool csv = !cfg.csv_dir.empty();
    if (csv) {
        fs::create_directories(cfg.csv_dir);
    }
    auto selected = [&cfg](const char* name) {
        for (const auto& s : cfg.select) {
            if (s == name) return true;
        }
        return false;
    };

    const GrayImage cipher = hierarchy::encrypt_image(plain, key).image;

    json report;
    report["schema_version"] = 1;
    report["command"] = "analyze";
    report["seed"] = cfg.seed;
    report["image"] = {{"path", cfg.plain_path},
                       {"width", plain.width},
                       {"height", plain.height}};

    if (selected("histogram")) {
        const auto hp = analysis::histogram(plain, 256);
        const auto content = partition::split_planes(cipher).msb7;
        const auto hc = analysis::histogram(
            std::span<const std::uint8_t>(content), 128);
        report["histogram"] = {{"plain", histogram_json(hp)},
                               {"cipher_content", histogram_json(hc)}};
        if (csv) {
            write_csv(fs::path(cfg.csv_dir) / "histogram_plain.csv",
                      histogram_csv(hp));
            write_csv(fs::path(cfg.csv_dir) / "histogram_cipher_content.csv",
                      histogram_csv(hc));
        }
    }

    if (selected("correlation")) {
        using analysis::Direction;
        const Direction dirs[] = {Direction::horizontal, Direction::vertical,
                                  Direction::diagonal};
        json corr;
        corr["pairs"] = cfg.pairs;
        std::uint64_t seed = cfg.seed;
        for (const auto& [label, img] :
             {std::pair<const char*, const GrayImage&>{"plain", plain},
              std::pair<const char*, const GrayImage&>{"cipher", cipher}}) {
            std::vector<analysis::CorrResult> results;
            json per_dir;
            for (Direction d : dirs) {
                auto res = analysis::correlation(img, d, cfg.pairs, seed++);
                per_dir[std::string(analysis::to_string(d))] = {{"r", res.r}};
                results.push_back(std::move(res));
            }
            corr[label] = per_dir;
            if (csv) {
                write_csv(fs::path(cfg.csv_dir) /
                              ("correlation_" + std::string(label) + ".csv"),
                          scatter_csv(results));
            }
        }
        report["correlation"] = corr;
    }

    if (selected("differential")) {
        // Flip positions are seeded; bits are drawn from 1..7 because those
        // are the planes the cipher actually carries.
        std::mt19937_64 rng(cfg.seed);
        json trials = json::array();
        double npcr_sum = 0.0;
        double uaci_sum = 0.0;
        std::string csv_body = "index,bit,npcr,uaci\n";
        for (int t = 0; t < cfg.flips; ++t) {
            analysis::Flip flip;
            flip.index = static_cast<std::size_t>(
                rng() % static_cast<std::uint64_t>(plain.pixels.size()));
            flip.bit = 1 + static_cast<int>(rng() % 7);
            const auto diff =
                analysis::differential_test(plain, key, flip);
            trials.push_back({{"index", flip.index},
                              {"bit", flip.bit},
                              {"npcr", diff.npcr},
                              {"uaci", diff.uaci}});
            npcr_sum += diff.npcr;
            uaci_sum += diff.uaci;
            csv_body += std::to_string(flip.index) + "," +
                        std::to_string(flip.bit) + "," + num(diff.npcr) + "," +
                        num(diff.uaci) + "\n";
        }
        const double n = cfg.flips > 0 ? cfg.flips : 1;
        report["differential"] = {{"trials", trials},
                                  {"npcr", npcr_sum / n},
                                  {"uaci", uaci_sum / n}};
        csv_body += "mean,," + num(npcr_sum / n) + "," + num(uaci_sum / n) + "\n";
        if (csv) {
            write_csv(fs::path(cfg.csv_dir) / "differential.csv", csv_body);
        }
    }

    if (selected("sensitivity")) {
        const auto deltas = analysis::default_perturbations();
        const auto rows = analysis::key_sensitivity_suite(plain, key, deltas);
        json arr = json::array();
        std::string csv_body =
            "subkey,field,epsilon,contour_npcr,contour_uaci,region_npcr,"
            "region_uaci,overall_npcr,overall_uaci,mask_npcr\n";
        for (const auto& row : rows) {
            const std::string field(analysis::to_string(row.change.field));
            arr.push_back(
                {{"subkey", row.change.subkey},
                 {"field", field},
                 {"epsilon", row.change.epsilon},
                 {"contour", {{"npcr", row.contour.npcr}, {"uaci", row.contour.uaci}}},
                 {"region", {{"npcr", row.region.npcr}, {"uaci", row.region.uaci}}},
                 {"overall", {{"npcr", row.overall.npcr}, {"uaci", row.overall.uaci}}},
                 {"mask", {{"npcr", row.mask.npcr}, {"uaci", row.mask.uaci}}}});
            csv_body += std::to_string(row.change.subkey) + "," + field + "," +
                        num(row.change.epsilon) + "," + num(row.contour.npcr) +
                        "," + num(row.contour.uaci) + "," +
                        num(row.region.npcr) + "," + num(row.region.uaci) +
                        "," + num(row.overall.npcr) + "," +
                        num(row.overall.uaci) + "," + num(row.mask.npcr) + "\n";
        }
        report["key_sensitivity"] = arr;
        if (csv) {
            write_csv(fs::path(cfg.csv_dir) / "key_sensitivity.csv", csv_body);
        }
    }

    write_json(report, cfg.report_out);
    return 0;
}

// -------------------------------------------------------------- attack ----

struct AttackConfig {
    std::string plain_path;
    std::string cipher_path;
    std::string target_path;
    std::string truth_path;
    std::string recovered_out;
    std::string keystream_out;
    std::string report_out;
};

int run_attack(const AttackConfig& cfg) {
    const GrayImage plain = load_image(cfg.plain_path);
    const GrayImage cipher = load_image(cfg.cipher_path);
    const GrayImage target = load_image(cfg.target_path);
    std::optional<GrayImage> truth;
    if (!cfg.truth_path.empty()) {
        truth = load_image(cfg.truth_path);
    }

    const auto res = analysis::keystream_attack(
        plain, cipher, target, truth ? &*truth : nullptr);

    // applying the extracted pad back to the source cryptogram must return
    // the source plaintext; report it as the harness sanity figure
    GrayImage source_rt(plain.width, plain.height);
    for (std::size_t i = 0; i < plain.pixels.size(); ++i) {
        source_rt.pixels[i] =
            static_cast<std::uint8_t>(cipher.pixels[i] ^ res.keystream[i]);
    }

    json report;
    report["schema_version"] = 1;
    report["command"] = "attack";
    report["source_roundtrip_npcr"] = analysis::npcr(source_rt, plain);
    if (res.npcr_vs_truth) {
        report["target"] = {{"npcr_vs_truth", *res.npcr_vs_truth},
                            {"uaci_vs_truth", *res.uaci_vs_truth},
                            {"attack_succeeded", *res.npcr_vs_truth == 0.0}};
    } else {
        report["target"] = nullptr;
    }

    if (!cfg.recovered_out.empty()) {
        save_image(cfg.recovered_out, res.recovered);
    }
    if (!cfg.keystream_out.empty()) {
        GrayImage ks(plain.width, plain.height);
        ks.pixels = res.keystream;
        save_image(cfg.keystream_out, ks);
    }
    write_json(report, cfg.report_out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hierarchical chaotic image cryptosystem"};
    app.require_subcommand(1);

    KeygenConfig keygen;
    auto* cmd_keygen =
        app.add_subcommand("keygen", "Generate a key file (96-byte binary)");
    cmd_keygen->add_option("out", keygen.out_path, "output key file")
        ->required();
    cmd_keygen
        ->add_option("--values", keygen.values,
                     "twelve explicit values: x0 mu0 x0_xor mu0_xor per "
                     "sub-key, sk1 sk2 sk3")
        ->expected(12);
    cmd_keygen->add_flag("--text", keygen.text,
                         "write the 12-number text form instead of binary");

    CryptConfig encrypt;
    auto* cmd_encrypt = app.add_subcommand("encrypt", "Encrypt an image");
    cmd_encrypt->add_option("input", encrypt.in_path, "plaintext image")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_encrypt->add_option("output", encrypt.out_path, "cryptogram image")
        ->required();
    cmd_encrypt->add_option("--key,-k", encrypt.key_path, "key file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_encrypt
        ->add_option("--sigma", encrypt.mask.canny.sigma,
                     "edge detector smoothing")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_encrypt
        ->add_option("--low", encrypt.mask.canny.low, "weak edge threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_encrypt
        ->add_option("--high", encrypt.mask.canny.high, "strong edge threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_encrypt
        ->add_option("--dilate", encrypt.mask.dilation_radius,
                     "contour dilation radius")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd_encrypt->add_option("--mask-out", encrypt.mask_out,
                            "also export the contour mask as a {0,255} image");

    CryptConfig decrypt;
    auto* cmd_decrypt = app.add_subcommand("decrypt", "Decrypt a cryptogram");
    cmd_decrypt->add_option("input", decrypt.in_path, "cryptogram image")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_decrypt->add_option("output", decrypt.out_path, "decrypted image")
        ->required();
    cmd_decrypt->add_option("--key,-k", decrypt.key_path, "key file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_decrypt
        ->add_option("--rights", decrypt.rights,
                     "sub-keys to apply, e.g. sk2,sk3 (sk3 is mandatory)")
        ->capture_default_str();

    AnalyzeConfig analyze;
    auto* cmd_analyze =
        app.add_subcommand("analyze", "Run the evaluation battery");
    cmd_analyze->add_option("plain", analyze.plain_path, "plaintext image")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_analyze->add_option("--key,-k", analyze.key_path, "key file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_analyze->add_option("--out,-o", analyze.report_out,
                            "JSON report path (default: stdout)");
    cmd_analyze->add_option("--csv-dir", analyze.csv_dir,
                            "also write CSV tables into this directory");
    cmd_analyze->add_option("--seed", analyze.seed, "RNG seed")
        ->capture_default_str();
    cmd_analyze->add_option("--pairs", analyze.pairs, "correlation pairs")
        ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}))
        ->capture_default_str();
    cmd_analyze->add_option("--flips", analyze.flips, "differential trials")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    cmd_analyze
        ->add_option("--select", analyze.select,
                     "metrics to run (histogram, correlation, differential, "
                     "sensitivity)")
        ->delimiter(',')
        ->check(CLI::IsMember({"histogram", "correlation", "differential",
                               "sensitivity"}));

    AttackConfig attack;
    auto* cmd_attack = app.add_subcommand(
        "attack", "Known-plaintext keystream attack harness");
    cmd_attack->add_option("plain", attack.plain_path, "known plaintext image")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_attack
        ->add_option("cipher", attack.cipher_path,
                     "cryptogram of the known plaintext")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_attack->add_option("target", attack.target_path,
                           "cryptogram the pad is transferred to")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_attack->add_option("--truth", attack.truth_path,
                           "target's true plaintext, for the verdict")
        ->check(CLI::ExistingFile);
    cmd_attack->add_option("--recovered", attack.recovered_out,
                           "write the recovered image here");
    cmd_attack->add_option("--keystream", attack.keystream_out,
                           "write the extracted pad as an image");
    cmd_attack->add_option("--out,-o", attack.report_out,
                           "JSON report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (cmd_keygen->parsed()) return run_keygen(keygen);
        if (cmd_encrypt->parsed()) return run_encrypt(encrypt);
        if (cmd_decrypt->parsed()) return run_decrypt(decrypt);
        if (cmd_analyze->parsed()) return run_analyze(analyze);
        if (cmd_attack->parsed()) return run_attack(attack);
    } catch (const crypto_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCrypto;
    } catch (const format_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    }
    return kExitUsage;
}
