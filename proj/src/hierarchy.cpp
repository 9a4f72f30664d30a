#include "hicrypt/hierarchy.hpp"

#include <utility>

#include "hicrypt/lut_cipher.hpp"

namespace hicrypt::hierarchy {

namespace part = hicrypt::partition;

namespace {

constexpr int kContentAlphabet = 128;
constexpr int kMaskAlphabet = 2;

std::vector<std::uint8_t> values_of(const std::vector<part::Partition::Entry>& side) {
    std::vector<std::uint8_t> v(side.size());
    for (std::size_t i = 0; i < side.size(); ++i) {
        v[i] = side[i].value;
    }
    return v;
}

void store_values(std::vector<part::Partition::Entry>& side,
                  const std::vector<std::uint8_t>& v) {
    for (std::size_t i = 0; i < side.size(); ++i) {
        side[i].value = v[i];
    }
}

// Splits a cryptogram's pixels into ciphered content and ciphered mask bits.
std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>
cipher_planes(const GrayImage& img) {
    part::Planes p = part::split_planes(img);
    return {std::move(p.msb7), std::move(p.lsb)};
}

part::EdgeMask unfold_mask(const GrayImage& cipher_image,
                           const std::vector<std::uint8_t>& c7,
                           const std::vector<std::uint8_t>& plain_bits) {
    part::EdgeMask mask;
    mask.width = cipher_image.width;
    mask.height = cipher_image.height;
    mask.bits.resize(c7.size());
    for (std::size_t i = 0; i < c7.size(); ++i) {
        mask.bits[i] = static_cast<std::uint8_t>(plain_bits[i] ^ (c7[i] & 1));
    }
    return mask;
}

} // namespace

Cryptogram encrypt_image(const GrayImage& img, const chaos::Key& key,
                         const MaskParams& params) {
    chaos::validate_key(key);
    const part::EdgeMask mask =
        part::dilate(part::canny(img, params.canny), params.dilation_radius);
    const part::Planes planes = part::split_planes(img);

    part::Partition split = part::partition_content(planes.msb7, mask);
    store_values(split.contour,
                 lut_cipher::encrypt_sequence(key.sk1, values_of(split.contour),
                                              kContentAlphabet));
    store_values(split.region,
                 lut_cipher::encrypt_sequence(key.sk2, values_of(split.region),
                                              kContentAlphabet));
    const std::vector<std::uint8_t> c7 = lut_cipher::encrypt_sequence(
        key.sk3, part::unpartition(split, img.width, img.height),
        kContentAlphabet);

    // Fold the ciphered content's parity into the mask bits before the sk3
    // pass; see the header note on why the low plane is coupled.
    std::vector<std::uint8_t> folded(c7.size());
    for (std::size_t i = 0; i < c7.size(); ++i) {
        folded[i] = static_cast<std::uint8_t>(mask.bits[i] ^ (c7[i] & 1));
    }
    const std::vector<std::uint8_t> lsb =
        lut_cipher::encrypt_sequence(key.sk3, folded, kMaskAlphabet);

    return Cryptogram{part::merge_planes(c7, lsb, img.width, img.height)};
}

partition::EdgeMask recover_mask(const Cryptogram& c,
                                 const chaos::SubKey& sk3) {
    auto [c7, lsb] = cipher_planes(c.image);
    const std::vector<std::uint8_t> folded =
        lut_cipher::decrypt_sequence(sk3, lsb, kMaskAlphabet);
    return unfold_mask(c.image, c7, folded);
}

GrayImage decrypt_partial(const Cryptogram& c, const chaos::Key& key,
                          const AccessRights& rights) {
    if (!rights.has_sk3) {
        throw crypto_error(
            "sk3 is required: without the mask the content subsets cannot "
            "be located");
    }
    chaos::validate_key(key);
    auto [c7, lsb] = cipher_planes(c.image);
    const part::EdgeMask mask = recover_mask(c, key.sk3);

    // Strip the sk3 envelope before the per-subset passes; it was applied
    // last during encryption.
    const std::vector<std::uint8_t> inner7 =
        lut_cipher::decrypt_sequence(key.sk3, c7, kContentAlphabet);

    part::Partition split = part::partition_content(inner7, mask);
    if (rights.has_sk1) {
        store_values(split.contour,
                     lut_cipher::decrypt_sequence(
                         key.sk1, values_of(split.contour), kContentAlphabet));
    }
    if (rights.has_sk2) {
        store_values(split.region,
                     lut_cipher::decrypt_sequence(
                         key.sk2, values_of(split.region), kContentAlphabet));
    }
    const std::vector<std::uint8_t> content =
        part::unpartition(split, c.image.width, c.image.height);

    return part::merge_planes(content, mask.bits, c.image.width,
                              c.image.height);
}

GrayImage decrypt_image(const Cryptogram& c, const chaos::Key& key) {
    return decrypt_partial(c, key, AccessRights{});
}

} // namespace hicrypt::hierarchy
