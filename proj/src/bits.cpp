#include "heilbronn/bits.hpp"

#include <algorithm>
#include <charconv>

namespace heilbronn {

BitString BitString::from_string(std::string_view bits) {
    BitString out;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit literal may only contain 0 and 1");
        }
        out.push_back(c == '1');
    }
    return out;
}

void BitString::append_uint(std::uint64_t value, std::size_t width) {
    if (width < 64 && (value >> width) != 0) {
        throw std::invalid_argument("value does not fit in " + std::to_string(width) + " bits");
    }
    for (std::size_t i = width; i-- > 0;) {
        bits_.push_back(i < 64 && ((value >> i) & 1U));
    }
}

void BitString::append_big(const mpz_class& value, std::size_t width) {
    if (sgn(value) < 0 || (sgn(value) > 0 && mpz_sizeinbase(value.get_mpz_t(), 2) > width)) {
        throw std::invalid_argument("big value does not fit in " + std::to_string(width) + " bits");
    }
    for (std::size_t i = width; i-- > 0;) {
        bits_.push_back(mpz_tstbit(value.get_mpz_t(), i) != 0);
    }
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitString BitString::prefix(std::size_t len) const {
    BitString out;
    out.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(std::min(len, size())));
    return out;
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

std::string BitString::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out = std::to_string(bits_.size()) + ":";
    for (std::size_t i = 0; i < bits_.size(); i += 4) {
        unsigned nibble = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            nibble <<= 1U;
            if (i + b < bits_.size() && bits_[i + b]) nibble |= 1U;
        }
        out.push_back(kDigits[nibble]);
    }
    return out;
}

BitString BitString::from_hex(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0) {
        throw std::invalid_argument("bit string hex must look like <length>:<hex>");
    }
    std::size_t length = 0;
    const auto* first = text.data();
    const auto [ptr, ec] = std::from_chars(first, first + colon, length);
    if (ec != std::errc{} || ptr != first + colon) {
        throw std::invalid_argument("bad bit length in hex bit string");
    }
    const auto digits = text.substr(colon + 1);
    if (digits.size() != (length + 3) / 4) {
        throw std::invalid_argument("hex digit count does not match bit length " +
                                    std::to_string(length));
    }
    BitString out;
    for (std::size_t d = 0; d < digits.size(); ++d) {
        const char c = digits[d];
        unsigned nibble = 0;
        if (c >= '0' && c <= '9') {
            nibble = static_cast<unsigned>(c - '0');
        } else if (c >= 'a' && c <= 'f') {
            nibble = static_cast<unsigned>(c - 'a' + 10);
        } else if (c >= 'A' && c <= 'F') {
            nibble = static_cast<unsigned>(c - 'A' + 10);
        } else {
            throw std::invalid_argument(std::string("bad hex digit '") + c + "'");
        }
        for (std::size_t b = 0; b < 4; ++b) {
            const bool bit = ((nibble >> (3 - b)) & 1U) != 0;
            if (d * 4 + b < length) {
                out.push_back(bit);
            } else if (bit) {
                throw std::invalid_argument("nonzero padding bits in hex bit string");
            }
        }
    }
    return out;
}

BitString operator+(BitString lhs, const BitString& rhs) {
    lhs.append(rhs);
    return lhs;
}

bool BitReader::read_bit() {
    if (pos_ >= bits_->size()) {
        throw DecodeError("unexpected end of bit stream", pos_);
    }
    return (*bits_)[pos_++];
}

std::uint64_t BitReader::read_uint(std::size_t width) {
    if (width > 64) {
        throw DecodeError("fixed-width field wider than 64 bits", pos_);
    }
    if (remaining() < width) {
        throw DecodeError("stream ends inside a " + std::to_string(width) + "-bit field", pos_);
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) {
        v = (v << 1U) | static_cast<std::uint64_t>((*bits_)[pos_++]);
    }
    return v;
}

mpz_class BitReader::read_big(std::size_t width) {
    if (remaining() < width) {
        throw DecodeError("stream ends inside a " + std::to_string(width) + "-bit field", pos_);
    }
    mpz_class v = 0;
    for (std::size_t i = 0; i < width; ++i) {
        v <<= 1;
        if ((*bits_)[pos_++]) v += 1;
    }
    return v;
}

BitString BitReader::read_bits(std::size_t count) {
    if (remaining() < count) {
        throw DecodeError("stream ends before announced payload", pos_);
    }
    BitString out;
    for (std::size_t i = 0; i < count; ++i) out.push_back((*bits_)[pos_++]);
    return out;
}

BitString BitReader::rest() { return read_bits(remaining()); }

void BitReader::expect_end(std::string_view context) const {
    if (!at_end()) {
        throw DecodeError(std::string(context) + ": " + std::to_string(remaining()) +
                              " trailing bits",
                          pos_);
    }
}

}  // namespace heilbronn
