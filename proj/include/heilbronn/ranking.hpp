#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "heilbronn/geometry.hpp"

namespace heilbronn {

/// C(n, k) as an exact big integer (0 when k > n).
mpz_class binomial(std::uint64_t n, std::uint64_t k);

/// ceil(log2(x)) for x >= 1.
std::size_t ceil_log2(const mpz_class& x);
std::size_t ceil_log2(std::uint64_t x);

/**
 * Lexicographic rank of a strictly increasing k-subset of {0, ..., universe-1}.
 *
 * Computed through the complement map c -> universe-1-c, which turns
 * lexicographic order into reversed colexicographic order, so the rank is
 * C(universe, k) - 1 - sum_j C(d_j, j+1).
 */
mpz_class rank_combination(std::span<const std::uint64_t> subset, std::uint64_t universe);

/// Inverse of rank_combination. Throws std::out_of_range unless 0 <= rank < C(universe, k).
std::vector<std::uint64_t> unrank_combination(const mpz_class& rank, std::uint64_t universe,
                                              std::size_t k);

struct ArrangementIndex {
    mpz_class value;
    mpz_class domain_size;  // C(K^2, n)
};

/// Rank of the arrangement's cell-id set among all C(K^2, n) arrangements.
ArrangementIndex rank_arrangement(const GridArrangement& a);

GridArrangement unrank_arrangement(const mpz_class& index, std::int64_t side, std::size_t n);

/// ceil(log2 C(K^2, n)), exact.
std::size_t baseline_length(std::int64_t side, std::size_t n);

/// Rank of an index pair i < j among C(count, 2), lexicographic.
std::uint64_t rank_pair(std::uint64_t i, std::uint64_t j, std::uint64_t count);
std::pair<std::uint64_t, std::uint64_t> unrank_pair(std::uint64_t rank, std::uint64_t count);

}  // namespace heilbronn
