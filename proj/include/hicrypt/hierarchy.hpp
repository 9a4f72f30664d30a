#pragma once

#include "hicrypt/chaos.hpp"
#include "hicrypt/image.hpp"
#include "hicrypt/partition.hpp"

namespace hicrypt::hierarchy {

// How the contour mask is derived at encryption time. Decryption never needs
// these values; the mask travels inside the cryptogram's low bit plane.
struct MaskParams {
    partition::CannyParams canny;
    int dilation_radius = 2;
};

// An encrypted image. Same dimensions as the plaintext: the seven high bit
// planes hold the ciphered content, the low plane the ciphered mask.
struct Cryptogram {
    GrayImage image;
};

// Which sub-keys the recipient holds. Content subsets whose sub-key is
// withheld stay ciphered in place; sk3 is always required because without
// the mask the content cannot even be split into its subsets.
struct AccessRights {
    bool has_sk1 = true;
    bool has_sk2 = true;
    bool has_sk3 = true;
};

// Encrypts: mask = dilate(canny(img)); the 7-bit content is split by the
// mask and ciphered per subset (contour under sk1, region under sk2, both
// over the 128-symbol alphabet, ascending raster order); the mask itself is
// ciphered under sk3 into the low plane. The plaintext's own low plane is
// dropped; its diagnostic value is negligible and the mask channel replaces
// it.
//
// Two couplings keep the cryptogram free of inert structure without touching
// the rights model:
//   - after the subset passes, the whole content runs through one more
//     sequence pass under sk3 (the envelope). The subset ciphers are
//     independent of each other, so without it a plaintext change could
//     never reach the other subset's planes. Every recipient holds sk3, so
//     stripping the envelope costs no extra privilege.
//   - each mask bit is XOR-folded with the parity of its enveloped content
//     symbol before the sk3 low-plane pass, so content changes reshape the
//     low plane as well.
Cryptogram encrypt_image(const GrayImage& img, const chaos::Key& key,
                         const MaskParams& params = {});

// Full decryption: recovers the mask from the low plane, splits the content
// by it, deciphers both subsets, and returns the image with the recovered
// mask re-inserted as the low plane (the watermark).
GrayImage decrypt_image(const Cryptogram& c, const chaos::Key& key);

// Rights-limited decryption; see AccessRights.
GrayImage decrypt_partial(const Cryptogram& c, const chaos::Key& key,
                          const AccessRights& rights);

// Recovers just the embedded mask. Needs only sk3 plus the (public)
// ciphered content parity from the high planes.
partition::EdgeMask recover_mask(const Cryptogram& c,
                                 const chaos::SubKey& sk3);

} // namespace hicrypt::hierarchy
