#include "heilbronn/codes.hpp"

#include <bit>
#include <limits>

namespace heilbronn {

std::size_t nat_length(std::uint64_t m) {
    if (m == std::numeric_limits<std::uint64_t>::max()) return 64;
    return static_cast<std::size_t>(std::bit_width(m + 1) - 1);
}

BitString nat_to_string(std::uint64_t m) {
    if (m == std::numeric_limits<std::uint64_t>::max()) {
        throw std::invalid_argument("nat_to_string: value too large");
    }
    BitString out;
    out.append_uint(m + 1 - (std::uint64_t{1} << nat_length(m)), nat_length(m));
    return out;
}

std::uint64_t string_to_nat(const BitString& s) {
    if (s.size() >= 64) {
        throw std::invalid_argument("string_to_nat: string longer than 63 bits");
    }
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        v = (v << 1U) | static_cast<std::uint64_t>(s[i]);
    }
    return v - 1;
}

BitString sd_bar(const BitString& x) {
    BitString out;
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(true);
    out.push_back(false);
    out.append(x);
    return out;
}

BitString sd_unbar(BitReader& in) {
    std::size_t n = 0;
    while (in.read_bit()) ++n;
    return in.read_bits(n);
}

BitString sd_prime(const BitString& x) {
    return sd_bar(nat_to_string(x.size())) + x;
}

BitString sd_unprime(BitReader& in) {
    const std::size_t start = in.position();
    const BitString len = sd_unbar(in);
    if (len.size() >= 64) {
        throw DecodeError("self-delimiting length field too long", start);
    }
    const std::uint64_t n = string_to_nat(len);
    if (n > in.remaining()) {
        throw DecodeError("stream ends before announced payload of " + std::to_string(n) + " bits",
                          in.position());
    }
    return in.read_bits(static_cast<std::size_t>(n));
}

std::size_t sd_prime_length(std::size_t payload_length) {
    return payload_length + 2 * nat_length(payload_length) + 1;
}

BitString encode_nat(std::uint64_t m) { return sd_prime(nat_to_string(m)); }

std::uint64_t decode_nat(BitReader& in) {
    const std::size_t start = in.position();
    const BitString s = sd_unprime(in);
    if (s.size() >= 64) {
        throw DecodeError("self-delimiting natural exceeds 64 bits", start);
    }
    return string_to_nat(s);
}

BitString pair(const BitString& x, const BitString& y) { return sd_prime(x) + y; }

std::pair<BitString, BitString> unpair(const BitString& z) {
    BitReader in(z);
    BitString x = sd_unprime(in);
    return {std::move(x), in.rest()};
}

}  // namespace heilbronn
