#include "heilbronn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace heilbronn {

GridArrangement::GridArrangement(std::int64_t side, std::vector<GridPoint> points)
    : side_(side), points_(std::move(points)) {
    if (side_ < 2 || side_ > kMaxGridSide) {
        throw std::invalid_argument("grid side must be in [2, 2^30], got " + std::to_string(side_));
    }
    for (const auto& p : points_) {
        if (p.x < 0 || p.y < 0 || p.x >= side_ || p.y >= side_) {
            throw std::invalid_argument("grid point (" + std::to_string(p.x) + "," +
                                        std::to_string(p.y) + ") outside the grid");
        }
    }
    std::sort(points_.begin(), points_.end());
    auto dup = std::adjacent_find(points_.begin(), points_.end());
    if (dup != points_.end()) {
        throw std::invalid_argument("duplicate pebble at (" + std::to_string(dup->x) + "," +
                                    std::to_string(dup->y) + ")");
    }
}

std::uint64_t GridArrangement::cell_id(std::size_t i) const {
    const auto& p = points_.at(i);
    return static_cast<std::uint64_t>(p.y) * static_cast<std::uint64_t>(side_) +
           static_cast<std::uint64_t>(p.x);
}

bool GridArrangement::contains(const GridPoint& p) const {
    return std::binary_search(points_.begin(), points_.end(), p);
}

GridArrangement GridArrangement::without(std::size_t i) const {
    GridArrangement out = *this;
    out.points_.erase(out.points_.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

GridArrangement GridArrangement::with(const GridPoint& p) const {
    if (p.x < 0 || p.y < 0 || p.x >= side_ || p.y >= side_) {
        throw std::invalid_argument("grid point outside the grid");
    }
    GridArrangement out = *this;
    auto it = std::lower_bound(out.points_.begin(), out.points_.end(), p);
    if (it != out.points_.end() && *it == p) {
        throw std::invalid_argument("cell already occupied");
    }
    out.points_.insert(it, p);
    return out;
}

std::int64_t twice_signed_area(const GridPoint& p, const GridPoint& q, const GridPoint& r) {
    const __int128 ux = q.x - p.x;
    const __int128 uy = q.y - p.y;
    const __int128 vx = r.x - p.x;
    const __int128 vy = r.y - p.y;
    return static_cast<std::int64_t>(ux * vy - uy * vx);
}

double twice_signed_area(const UnitPoint& p, const UnitPoint& q, const UnitPoint& r) {
    const double ux = q.x - p.x;
    const double uy = q.y - p.y;
    const double vx = r.x - p.x;
    const double vy = r.y - p.y;
    const double a = ux * vy;
    const double b = uy * vx;
    return a - b;
}

bool collinear(const GridPoint& p, const GridPoint& q, const GridPoint& r) {
    return twice_signed_area(p, q, r) == 0;
}

bool collinear(const UnitPoint& p, const UnitPoint& q, const UnitPoint& r, double eps) {
    return std::abs(twice_signed_area(p, q, r)) <= eps;
}

std::int64_t lattice_points_half_open(const GridPoint& p, const GridPoint& q) {
    if (p == q) {
        throw std::invalid_argument("lattice_points_half_open: endpoints coincide");
    }
    return std::gcd(q.x - p.x, q.y - p.y);
}

double normalize_area(std::int64_t twice_area, std::int64_t side) {
    if (side < 2) {
        throw std::invalid_argument("normalize_area: K must be >= 2");
    }
    const double span = static_cast<double>(side - 1);
    return static_cast<double>(twice_area) / (2.0 * span * span);
}

UnitPoint to_unit(const GridPoint& p, std::int64_t side) {
    const double span = static_cast<double>(side - 1);
    return {static_cast<double>(p.x) / span, static_cast<double>(p.y) / span};
}

namespace {

using Triple = std::array<std::size_t, 3>;

// Best-so-far with deterministic tie-breaking on the index triple.
template <typename Value>
struct Best {
    Value value = std::numeric_limits<Value>::max();
    Triple idx{};
    bool set = false;

    void offer(Value v, const Triple& t) {
        if (!set || v < value || (v == value && t < idx)) {
            value = v;
            idx = t;
            set = true;
        }
    }
};

template <typename Value, typename Eval>
Best<Value> scan_all(std::size_t n, Eval&& eval) {
    Best<Value> best;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                best.offer(eval(i, j, k), Triple{i, j, k});
            }
        }
    }
    return best;
}

/**
 * Strip-pruned search. `pts` are the points in a common floating frame,
 * `eval(i,j,k)` the canonical |twice area| for i<j<k and `to_frame` maps
 * such a value into the frame's twice-area units. For every pair (i, j)
 * only third vertices k > j inside the strip |cross| <= bound are evaluated;
 * the bound is inflated by a margin far above the floating error of the
 * filter, so every triple that can still win is visited.
 */
template <typename Value, typename Eval, typename ToFrame>
Best<Value> scan_pruned(std::span<const UnitPoint> pts, Eval&& eval, ToFrame&& to_frame) {
    const std::size_t n = pts.size();
    double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
    for (const auto& p : pts) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double extent = std::max({max_x - min_x, max_y - min_y, 1e-300});
    const double margin = 1e-9 * extent;
    const double area_margin = 1e-9 * extent * extent;

    const auto cells = static_cast<std::size_t>(
        std::max(1.0, std::ceil(std::sqrt(static_cast<double>(n)))));
    const double cell_w = std::max(max_x - min_x, extent * 1e-12) / static_cast<double>(cells);
    const double cell_h = std::max(max_y - min_y, extent * 1e-12) / static_cast<double>(cells);
    auto clamp_cell = [&](double v) -> std::ptrdiff_t {
        if (!(v > 0.0)) return 0;
        const double c = std::floor(v);
        if (c >= static_cast<double>(cells - 1)) return static_cast<std::ptrdiff_t>(cells - 1);
        return static_cast<std::ptrdiff_t>(c);
    };
    std::vector<std::vector<std::size_t>> bucket(cells * cells);
    for (std::size_t i = 0; i < n; ++i) {
        const auto cx = clamp_cell((pts[i].x - min_x) / cell_w);
        const auto cy = clamp_cell((pts[i].y - min_y) / cell_h);
        bucket[static_cast<std::size_t>(cy) * cells + static_cast<std::size_t>(cx)].push_back(i);
    }

    Best<Value> best;
    // Seed the bound with neighbours in x order; they tend to form thin triangles.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pts[a].x < pts[b].x; });
    for (std::size_t s = 0; s + 2 < n; ++s) {
        Triple t{order[s], order[s + 1], order[s + 2]};
        std::sort(t.begin(), t.end());
        best.offer(eval(t[0], t[1], t[2]), t);
    }

    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
            const double dx = pts[j].x - pts[i].x;
            const double dy = pts[j].y - pts[i].y;
            const double bound = to_frame(best.value) + area_margin;
            auto visit = [&](std::size_t cell) {
                for (std::size_t k : bucket[cell]) {
                    if (k > j) best.offer(eval(i, j, k), Triple{i, j, k});
                }
            };
            if (std::abs(dx) >= std::abs(dy)) {
                // Along x: the strip spans bound/|dx| vertically around the line.
                const double half = bound / std::abs(dx) + margin;
                const double slope = dy / dx;
                for (std::size_t cx = 0; cx < cells; ++cx) {
                    const double x0 = min_x + static_cast<double>(cx) * cell_w;
                    const double x1 = x0 + cell_w;
                    const double ya = pts[i].y + slope * (x0 - pts[i].x);
                    const double yb = pts[i].y + slope * (x1 - pts[i].x);
                    const double lo = std::min(ya, yb) - half;
                    const double hi = std::max(ya, yb) + half;
                    if (hi < min_y - margin || lo > max_y + margin) continue;
                    const auto r0 = clamp_cell((lo - min_y) / cell_h);
                    const auto r1 = clamp_cell((hi - min_y) / cell_h);
                    for (auto cy = r0; cy <= r1; ++cy) {
                        visit(static_cast<std::size_t>(cy) * cells + cx);
                    }
                }
            } else {
                const double half = bound / std::abs(dy) + margin;
                const double slope = dx / dy;
                for (std::size_t cy = 0; cy < cells; ++cy) {
                    const double y0 = min_y + static_cast<double>(cy) * cell_h;
                    const double y1 = y0 + cell_h;
                    const double xa = pts[i].x + slope * (y0 - pts[i].y);
                    const double xb = pts[i].x + slope * (y1 - pts[i].y);
                    const double lo = std::min(xa, xb) - half;
                    const double hi = std::max(xa, xb) + half;
                    if (hi < min_x - margin || lo > max_x + margin) continue;
                    const auto c0 = clamp_cell((lo - min_x) / cell_w);
                    const auto c1 = clamp_cell((hi - min_x) / cell_w);
                    for (auto cx = c0; cx <= c1; ++cx) {
                        visit(cy * cells + static_cast<std::size_t>(cx));
                    }
                }
            }
        }
    }
    return best;
}

}  // namespace

GridTriangle min_area_triangle(const GridArrangement& a, SearchMode mode) {
    const std::size_t n = a.size();
    if (n < 3) {
        throw std::invalid_argument("min_area_triangle needs at least 3 points");
    }
    const auto& p = a.points();
    auto eval = [&](std::size_t i, std::size_t j, std::size_t k) {
        const std::int64_t t = twice_signed_area(p[i], p[j], p[k]);
        return t < 0 ? -t : t;
    };
    Best<std::int64_t> best;
    if (mode == SearchMode::exhaustive) {
        best = scan_all<std::int64_t>(n, eval);
    } else {
        // Work in raw grid units: exact for K <= 2^30 in a double.
        std::vector<UnitPoint> frame(n);
        for (std::size_t i = 0; i < n; ++i) {
            frame[i] = {static_cast<double>(p[i].x), static_cast<double>(p[i].y)};
        }
        best = scan_pruned<std::int64_t>(
            frame, eval, [](std::int64_t v) { return static_cast<double>(v); });
    }
    return {best.idx, best.value, normalize_area(best.value, a.side())};
}

UnitTriangle min_area_triangle(std::span<const UnitPoint> points, SearchMode mode) {
    const std::size_t n = points.size();
    if (n < 3) {
        throw std::invalid_argument("min_area_triangle needs at least 3 points");
    }
    auto eval = [&](std::size_t i, std::size_t j, std::size_t k) {
        return std::abs(twice_signed_area(points[i], points[j], points[k]));
    };
    Best<double> best;
    if (mode == SearchMode::exhaustive) {
        best = scan_all<double>(n, eval);
    } else {
        best = scan_pruned<double>(points, eval, [](double v) { return v; });
    }
    return {best.idx, best.value, best.value / 2.0};
}

}  // namespace heilbronn
