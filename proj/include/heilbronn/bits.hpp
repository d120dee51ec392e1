#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace heilbronn {

/// Raised by every decoder. position() is the bit offset where decoding failed.
class DecodeError : public std::runtime_error {
public:
    DecodeError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at bit " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Finite binary string, most significant bit first.
class BitString {
public:
    BitString() = default;

    /// From a '0'/'1' literal. Throws std::invalid_argument on other characters.
    static BitString from_string(std::string_view bits);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    bool operator[](std::size_t i) const { return bits_[i]; }

    void push_back(bool bit) { bits_.push_back(bit); }

    /// Appends the low `width` bits of value, MSB first. value must fit.
    void append_uint(std::uint64_t value, std::size_t width);

    /// Appends value as exactly `width` bits, MSB first. value must fit.
    void append_big(const mpz_class& value, std::size_t width);

    void append(const BitString& other);

    BitString prefix(std::size_t len) const;

    std::string to_string() const;

    /// "<bit length>:<hex digits>", last nibble zero padded.
    std::string to_hex() const;
    static BitString from_hex(std::string_view text);

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<bool> bits_;
};

BitString operator+(BitString lhs, const BitString& rhs);

/// Sequential reader over a BitString; every read past the end throws DecodeError.
class BitReader {
public:
    explicit BitReader(const BitString& bits, std::size_t start = 0)
        : bits_(&bits), pos_(start) {}

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return bits_->size() - pos_; }
    bool at_end() const noexcept { return pos_ == bits_->size(); }

    bool read_bit();
    std::uint64_t read_uint(std::size_t width);
    mpz_class read_big(std::size_t width);
    BitString read_bits(std::size_t count);
    BitString rest();

    /// Throws DecodeError unless the whole input was consumed.
    void expect_end(std::string_view context) const;

private:
    const BitString* bits_;
    std::size_t pos_;
};

}  // namespace heilbronn
