#pragma once

#include <cstddef>
#include <cstdint>

#include "heilbronn/geometry.hpp"

namespace heilbronn {

bool is_prime(std::int64_t p);

struct ErdosConstruction {
    std::int64_t p = 0;
    GridArrangement arrangement;  // {(i, i^2 mod p)} on a p x p grid
    std::int64_t min_twice_area = 0;
    /// T / (2 p^2): cell size 1/p, the scale under which the 1/(2p^2) bound is stated.
    double area_cell_scale = 0.0;
    /// T / (2 (p-1)^2): the grid convention used everywhere else.
    double area_grid_scale = 0.0;
};

/**
 * Pebbles (i, i^2 mod p), i = 0..p-1. Verifies exhaustively that no three
 * are collinear (throws std::logic_error otherwise). p must be prime.
 */
ErdosConstruction erdos_prime(std::int64_t p);

/// The Erdos pebbles mapped into the unit square as ((i + 1/2)/p, (j + 1/2)/p).
PointSet erdos_unit_square(std::int64_t p);

struct OptimizerResult {
    PointSet points;
    double value = 0.0;  // min triangle area of `points`, recomputed
    std::size_t iterations = 0;
    std::size_t best_restart = 0;
    std::uint64_t seed = 0;
};

// Local-search schedule constants.
inline constexpr double kInitialStep = 0.25;
inline constexpr double kStepDecay = 0.95;
inline constexpr std::size_t kRejectionStreak = 20;
inline constexpr double kMinStep = 1e-9;

/**
 * Random-restart hill climbing for Heilbronn configurations, 3 <= n <= 16.
 * A move nudges one point (a vertex of the current smallest triangle, or any
 * point half the time) by up to `step` per coordinate, clamped to the unit
 * square, and is kept only if the minimum area strictly increases. The step
 * shrinks by kStepDecay after every kRejectionStreak consecutive rejections
 * and the walk restarts from fresh random points once it falls below
 * kMinStep. Restart r draws from stream r, so results depend only on the
 * seed; ties between restarts go to the lowest index.
 */
OptimizerResult optimize_heilbronn(std::size_t n, std::size_t restarts, std::size_t steps,
                                   std::uint64_t seed, unsigned jobs = 1);

/// Unit-square corners followed by n-4 seeded uniform points. n >= 4.
PointSet corners_plus_random(std::size_t n, std::uint64_t seed);

}  // namespace heilbronn
