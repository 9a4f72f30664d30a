#pragma once

#include <stdexcept>
#include <string>

namespace hicrypt {

// Malformed or inconsistent input data: unreadable image files, wrong key
// file length, mismatched dimensions. The CLI reports these with exit code 2.
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// Violations of the cryptosystem's domain: key parameters outside their
// chaotic ranges, symbols outside the alphabet, missing sub-keys. The CLI
// reports these with exit code 3.
class crypto_error : public std::runtime_error {
public:
    explicit crypto_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hicrypt
