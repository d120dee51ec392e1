#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace heilbronn {

/// Largest supported grid side. Keeps every twice-area below 2^62.
inline constexpr std::int64_t kMaxGridSide = std::int64_t{1} << 30;

/// Default tolerance on |twice_signed_area| for continuous collinearity.
inline constexpr double kDefaultCollinearEps = 1e-15;

struct GridPoint {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

struct UnitPoint {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const UnitPoint&, const UnitPoint&) = default;
};

using PointSet = std::vector<UnitPoint>;

/**
 * n distinct pebbles on a K x K grid (K grid lines per axis, spacing 1/(K-1)).
 *
 * Points are kept sorted in increasing (x, y) order, so two arrangements
 * holding the same cells compare equal.
 */
class GridArrangement {
public:
    GridArrangement() = default;

    /// Validates bounds and distinctness, then sorts. Throws std::invalid_argument.
    GridArrangement(std::int64_t side, std::vector<GridPoint> points);

    std::int64_t side() const noexcept { return side_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<GridPoint>& points() const noexcept { return points_; }
    const GridPoint& operator[](std::size_t i) const { return points_[i]; }

    /// Row-major cell id y*K + x.
    std::uint64_t cell_id(std::size_t i) const;

    bool contains(const GridPoint& p) const;

    /// Copy with point i removed.
    GridArrangement without(std::size_t i) const;

    /// Copy with p inserted. Throws if p is out of range or occupied.
    GridArrangement with(const GridPoint& p) const;

    friend bool operator==(const GridArrangement&, const GridArrangement&) = default;

private:
    std::int64_t side_ = 0;
    std::vector<GridPoint> points_;
};

/// (q - p) x (r - p), exact. 128-bit intermediates.
std::int64_t twice_signed_area(const GridPoint& p, const GridPoint& q, const GridPoint& r);

/// (q - p) x (r - p), evaluated in a fixed order so results are reproducible.
double twice_signed_area(const UnitPoint& p, const UnitPoint& q, const UnitPoint& r);

bool collinear(const GridPoint& p, const GridPoint& q, const GridPoint& r);
bool collinear(const UnitPoint& p, const UnitPoint& q, const UnitPoint& r,
               double eps = kDefaultCollinearEps);

/// gcd(|dx|, |dy|): lattice points on [p, q). Throws if p == q.
std::int64_t lattice_points_half_open(const GridPoint& p, const GridPoint& q);

/// twice_area / (2 (K-1)^2). Throws if K < 2.
double normalize_area(std::int64_t twice_area, std::int64_t side);

enum class SearchMode { exhaustive, fast };

/// Smallest triangle of a grid arrangement.
struct GridTriangle {
    std::array<std::size_t, 3> idx{};
    std::int64_t twice_area = 0;
    double area = 0.0;
};

/// Smallest triangle of a continuous point set.
struct UnitTriangle {
    std::array<std::size_t, 3> idx{};
    double twice_area = 0.0;
    double area = 0.0;
};

/**
 * Minimum-area triangle over all C(n,3) triples.
 *
 * Both modes return the same triple: the least |twice area| with ties going
 * to the lexicographically smallest (i, j, k). The fast mode prunes third
 * vertices to a strip around each pair's line and only evaluates the
 * survivors. Throws std::invalid_argument for n < 3.
 */
GridTriangle min_area_triangle(const GridArrangement& a, SearchMode mode = SearchMode::fast);
UnitTriangle min_area_triangle(std::span<const UnitPoint> points,
                               SearchMode mode = SearchMode::fast);

/// Grid point (i, j) -> (i/(K-1), j/(K-1)).
UnitPoint to_unit(const GridPoint& p, std::int64_t side);

}  // namespace heilbronn
