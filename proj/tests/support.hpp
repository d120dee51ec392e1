#pragma once

// Planted-structure generators shared by the unit and acceptance tests.

#include <cstdint>
#include <set>
#include <vector>

#include "heilbronn/experiments.hpp"
#include "heilbronn/geometry.hpp"
#include "heilbronn/witnesses.hpp"

namespace heilbronn::testing {

inline std::int64_t draw(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

// Adds uniform cells to `pts` until it holds n distinct points.
inline GridArrangement fill(std::int64_t side, std::size_t n, std::vector<GridPoint> pts, Rng& rng,
                            bool distinct_rows = false) {
    std::set<GridPoint> cells(pts.begin(), pts.end());
    std::set<std::int64_t> rows;
    for (const auto& p : pts) rows.insert(p.y);
    while (pts.size() < n) {
        const GridPoint p{draw(rng, 0, side - 1), draw(rng, 0, side - 1)};
        if (cells.count(p) || (distinct_rows && rows.count(p.y))) continue;
        cells.insert(p);
        rows.insert(p.y);
        pts.push_back(p);
    }
    return GridArrangement(side, std::move(pts));
}

/// n pebbles containing P, P+d, P+2d for a random small direction d.
inline GridArrangement plant_collinear(std::int64_t side, std::size_t n, Rng& rng) {
    const std::int64_t reach = std::max<std::int64_t>(1, std::min<std::int64_t>(side / 2 - 1, 50));
    for (;;) {
        const std::int64_t dx = draw(rng, -reach, reach);
        const std::int64_t dy = draw(rng, -reach, reach);
        if (dx == 0 && dy == 0) continue;
        const GridPoint p{draw(rng, 0, side - 1), draw(rng, 0, side - 1)};
        const GridPoint r{p.x + 2 * dx, p.y + 2 * dy};
        if (r.x < 0 || r.y < 0 || r.x >= side || r.y >= side) continue;
        return fill(side, n, {p, {p.x + dx, p.y + dy}, r}, rng);
    }
}

/// n pebbles, two of them on a common row.
inline GridArrangement plant_shared_row(std::int64_t side, std::size_t n, Rng& rng) {
    const std::int64_t y = draw(rng, 0, side - 1);
    const std::int64_t x1 = draw(rng, 0, side - 1);
    std::int64_t x2 = x1;
    while (x2 == x1) x2 = draw(rng, 0, side - 1);
    return fill(side, n, {{x1, y}, {x2, y}}, rng);
}

/// Three cells spanning a triangle of twice-area 1.
inline std::vector<GridPoint> unit_triangle_seed(std::int64_t side, Rng& rng) {
    const GridPoint p{draw(rng, 0, side - 2), draw(rng, 0, side - 2)};
    const std::int64_t a = draw(rng, 1, std::min<std::int64_t>(side - 1 - p.x, 40));
    // Q = P + (a, 1), R = P + (a - 1, 1): twice area a - (a - 1) = 1.
    return {p, {p.x + a, p.y + 1}, {p.x + a - 1, p.y + 1}};
}

/// n pebbles, no three collinear, with a triangle of twice-area 1.
inline GridArrangement plant_unit_triangle(std::int64_t side, std::size_t n, Rng& rng) {
    for (;;) {
        GridArrangement a = fill(side, n, unit_triangle_seed(side, rng), rng);
        if (!find_collinear_triple(a)) return a;
    }
}

/// n pebbles on n distinct rows.
inline GridArrangement distinct_rows(std::int64_t side, std::size_t n, Rng& rng) {
    return fill(side, n, {}, rng, true);
}

}  // namespace heilbronn::testing
