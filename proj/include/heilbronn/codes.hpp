#pragma once

#include <cstdint>
#include <utility>

#include "heilbronn/bits.hpp"

namespace heilbronn {

// Naturals <-> strings: 0 <-> "", 1 <-> "0", 2 <-> "1", 3 <-> "00", ...
// m maps to the binary expansion of m+1 with its leading 1 dropped.
BitString nat_to_string(std::uint64_t m);
std::uint64_t string_to_nat(const BitString& s);

/// floor(log2(m + 1)), the length of nat_to_string(m).
std::size_t nat_length(std::uint64_t m);

/// 1^n 0 x for x of length n.
BitString sd_bar(const BitString& x);
BitString sd_unbar(BitReader& in);

/// bar(nat_to_string(l(x))) x. Length l(x) + 2 floor(log2(l(x)+1)) + 1.
BitString sd_prime(const BitString& x);
BitString sd_unprime(BitReader& in);

/// Length of sd_prime(x) given l(x).
std::size_t sd_prime_length(std::size_t payload_length);

/// Self-delimiting natural: sd_prime(nat_to_string(m)).
BitString encode_nat(std::uint64_t m);
std::uint64_t decode_nat(BitReader& in);

/// <x, y> = x' y. The decoder takes whatever follows x' as y.
BitString pair(const BitString& x, const BitString& y);
std::pair<BitString, BitString> unpair(const BitString& z);

}  // namespace heilbronn
