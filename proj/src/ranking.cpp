#include "heilbronn/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace heilbronn {

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
    mpz_class out;
    if (k > n) return 0;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

std::size_t ceil_log2(const mpz_class& x) {
    if (sgn(x) <= 0) {
        throw std::invalid_argument("ceil_log2 of a nonpositive value");
    }
    if (x == 1) return 0;
    const mpz_class y = x - 1;
    return mpz_sizeinbase(y.get_mpz_t(), 2);
}

std::size_t ceil_log2(std::uint64_t x) { return ceil_log2(mpz_class(static_cast<unsigned long>(x))); }

mpz_class rank_combination(std::span<const std::uint64_t> subset, std::uint64_t universe) {
    const std::size_t k = subset.size();
    mpz_class colex = 0;
    for (std::size_t j = 0; j < k; ++j) {
        if (subset[j] >= universe || (j > 0 && subset[j] <= subset[j - 1])) {
            throw std::invalid_argument("rank_combination: subset must be strictly increasing and in range");
        }
        // d values in ascending order come from the subset read backwards.
        const std::uint64_t d = universe - 1 - subset[k - 1 - j];
        colex += binomial(d, j + 1);
    }
    return binomial(universe, k) - 1 - colex;
}

namespace {

// Largest d in [lo, hi] with C(d, j) <= m. C(lo, j) <= m must hold.
std::uint64_t largest_fitting(const mpz_class& m, std::uint64_t j, std::uint64_t lo,
                              std::uint64_t hi) {
    if (lo >= hi) return lo;
    auto fits = [&](std::uint64_t d) { return binomial(d, j) <= m; };

    // C(d, j) ~ (d - (j-1)/2)^j / j!, a close first guess for large d.
    std::uint64_t guess = lo;
    if (sgn(m) > 0) {
        long exp2 = 0;
        const double mant = mpz_get_d_2exp(&exp2, m.get_mpz_t());
        const double log2m = std::log2(mant) + static_cast<double>(exp2);
        const double log2fact = std::lgamma(static_cast<double>(j) + 1.0) / std::log(2.0);
        const double est = std::exp2((log2m + log2fact) / static_cast<double>(j)) +
                           (static_cast<double>(j) - 1.0) / 2.0;
        if (std::isfinite(est)) {
            guess = static_cast<std::uint64_t>(
                std::clamp(est, static_cast<double>(lo), static_cast<double>(hi)));
        } else {
            guess = hi;
        }
    }

    std::uint64_t good = lo;
    std::uint64_t bad = hi + 1;  // exclusive
    if (fits(guess)) {
        good = guess;
        std::uint64_t step = 1;
        while (good < hi) {
            const std::uint64_t probe = std::min(hi, good + step);
            if (fits(probe)) {
                good = probe;
                step *= 2;
            } else {
                bad = probe;
                break;
            }
        }
    } else {
        bad = guess;
        std::uint64_t step = 1;
        while (bad > lo + 1) {
            const std::uint64_t probe = bad - std::min(step, bad - lo - 1);
            if (fits(probe)) {
                good = probe;
                break;
            }
            bad = probe;
            step *= 2;
        }
    }
    while (bad - good > 1) {
        const std::uint64_t mid = good + (bad - good) / 2;
        if (fits(mid)) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    return good;
}

}  // namespace

std::vector<std::uint64_t> unrank_combination(const mpz_class& rank, std::uint64_t universe,
                                              std::size_t k) {
    const mpz_class total = binomial(universe, k);
    if (sgn(rank) < 0 || rank >= total) {
        throw std::out_of_range("combination rank outside [0, C(" + std::to_string(universe) +
                                ", " + std::to_string(k) + "))");
    }
    mpz_class m = total - 1 - rank;
    std::vector<std::uint64_t> out(k);
    std::uint64_t hi = universe - 1;
    for (std::size_t j = k; j >= 1; --j) {
        const std::uint64_t d = largest_fitting(m, j, j - 1, hi);
        m -= binomial(d, j);
        // d_{j-1} in ascending colex order is the (k-j)-th smallest lexicographic element.
        out[k - j] = universe - 1 - d;
        hi = d - 1;
    }
    return out;
}

ArrangementIndex rank_arrangement(const GridArrangement& a) {
    std::vector<std::uint64_t> cells(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) cells[i] = a.cell_id(i);
    std::sort(cells.begin(), cells.end());
    const auto universe = static_cast<std::uint64_t>(a.side()) * static_cast<std::uint64_t>(a.side());
    return {rank_combination(cells, universe), binomial(universe, a.size())};
}

GridArrangement unrank_arrangement(const mpz_class& index, std::int64_t side, std::size_t n) {
    if (side < 2 || side > kMaxGridSide) {
        throw std::invalid_argument("grid side must be in [2, 2^30]");
    }
    const auto k = static_cast<std::uint64_t>(side);
    const auto cells = unrank_combination(index, k * k, n);
    std::vector<GridPoint> pts;
    pts.reserve(n);
    for (std::uint64_t c : cells) {
        pts.push_back({static_cast<std::int64_t>(c % k), static_cast<std::int64_t>(c / k)});
    }
    return GridArrangement(side, std::move(pts));
}

std::size_t baseline_length(std::int64_t side, std::size_t n) {
    const auto k = static_cast<std::uint64_t>(side);
    if (n > k * k) {
        throw std::invalid_argument("baseline_length: more pebbles than grid points");
    }
    return ceil_log2(binomial(k * k, n));
}

std::uint64_t rank_pair(std::uint64_t i, std::uint64_t j, std::uint64_t count) {
    if (!(i < j && j < count)) {
        throw std::invalid_argument("rank_pair: need i < j < count");
    }
    // Pairs starting before i: sum_{a<i} (count-1-a).
    return i * (2 * count - i - 1) / 2 + (j - i - 1);
}

std::pair<std::uint64_t, std::uint64_t> unrank_pair(std::uint64_t rank, std::uint64_t count) {
    std::uint64_t i = 0;
    while (i + 1 < count) {
        const std::uint64_t row = count - 1 - i;
        if (rank < row) return {i, i + 1 + rank};
        rank -= row;
        ++i;
    }
    throw std::out_of_range("pair rank outside [0, C(count, 2))");
}

}  // namespace heilbronn
