#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "heilbronn/bits.hpp"
#include "heilbronn/geometry.hpp"

namespace heilbronn {

// Compression witnesses. Each encoder emits a description of an arrangement
// that exploits one structural property; the matching decoder rebuilds the
// arrangement from the payload and (K, n) alone. Savings against the
// baseline ceil(log2 C(K^2, n)) is a computable lower bound on how far the
// arrangement is from being incompressible.

enum class WitnessKind { collinear, rowline, small_triangle, theorem2 };

std::string_view to_string(WitnessKind kind);
WitnessKind witness_kind_from_string(std::string_view name);

/// The arrangement lacks the structure a witness needs.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct WitnessReport {
    WitnessKind kind = WitnessKind::collinear;
    BitString payload;
    std::size_t witness_length = 0;
    std::size_t baseline_length = 0;
    std::int64_t savings = 0;  // baseline_length - witness_length
};

using Triple = std::array<std::size_t, 3>;

/// Lexicographically first collinear triple, exhaustive and exact.
std::optional<Triple> find_collinear_triple(const GridArrangement& a);

/// Lexicographically first pair of pebbles on one horizontal grid line.
std::optional<std::pair<std::size_t, std::size_t>> find_shared_row(const GridArrangement& a);

WitnessReport encode_collinear_witness(const GridArrangement& a);
WitnessReport encode_rowline_witness(const GridArrangement& a);

/// Geometry of the triangle the small-triangle witness encodes.
struct SmallTriangleGeometry {
    std::size_t p = 0, q = 0, r = 0;  // arrangement indices, PQ the longest side, p < q
    std::int64_t g = 0;               // gcd of Q - P
    std::int64_t twice_area = 0;      // T
    std::int64_t f = 0;               // T / g
    std::uint64_t candidate_index = 0;  // R's position in the candidate enumeration
};

SmallTriangleGeometry small_triangle_geometry(const GridArrangement& a, const Triple& triple);

/**
 * Payload: rank of the arrangement without R (fixed width), rank of the pair
 * (P, Q) among C(n-1, 2) (fixed width), then R's candidate index as a
 * self-delimiting natural. Candidates lie on the lines parallel to PQ at
 * twice-area k*g, k = 1, 2, ..., above before below, and within each line
 * ordered by projection onto PQ inside [P, Q). R's index is below 2T.
 */
WitnessReport encode_small_triangle_witness(const GridArrangement& a, const Triple& triple);

/// Uses the arrangement's minimum-area triangle.
WitnessReport encode_small_triangle_witness(const GridArrangement& a);

/// Upper bound on the small-triangle witness length for twice-area T.
std::size_t small_triangle_length_bound(std::int64_t side, std::size_t n, std::int64_t twice_area);

// --- Forbidding-line machinery -------------------------------------------

struct ForbiddingLine {
    std::size_t top = 0;     // pebble in the top rectangle
    std::size_t bottom = 0;  // pebble in the lower rectangle
    GridPoint p;             // top pebble
    GridPoint q;             // bottom pebble
};

struct ForbiddingLineSet {
    std::int64_t side = 0;
    std::int64_t split_row = 0;
    // The lines come from the pebbles strictly beyond split_row on the larger
    // side: above it, or below it when mirrored.
    bool mirrored = false;
    std::vector<ForbiddingLine> lines;
    std::size_t rect_top_count = 0;
    std::size_t rect_bottom_count = 0;
};

struct HalfSplit {
    std::int64_t row = 0;
    bool mirrored = false;
};

/**
 * Dividing row for pebble rows `rows` (n of them). Counting from the top, the
 * row of the (n/2 + 1)-th pebble leaves n/2 pebbles above it; counting from
 * the bottom, the mirror choice leaves n/2 below. The side with more room is
 * taken as the upper half (mirrored when that is the bottom), ties going to
 * the top. Rows need not be distinct.
 */
HalfSplit half_split(std::span<const std::int64_t> rows, std::int64_t side);

/// half_split of the pebble rows. Requires distinct rows.
HalfSplit split_row(const GridArrangement& a);

/// Horizontal strip (height 1/10, counted from the top) holding grid row y.
std::int64_t horizontal_strip(std::int64_t y, std::int64_t side);
/// Vertical strip (width 1/5, counted from the left) holding grid column x.
std::int64_t vertical_strip(std::int64_t x, std::int64_t side);

/**
 * Lines through one pebble in the top rectangle (middle vertical strip, top
 * horizontal strip) and one in the lower rectangle (middle vertical strip,
 * fifth horizontal strip), both strictly above the split row. Indices refer
 * to `points`. Throws std::logic_error if a line misses the bottom side.
 */
ForbiddingLineSet forbidding_lines(std::int64_t side, std::int64_t split,
                                   std::span<const GridPoint> points);

/**
 * Forbidding lines of the larger half chosen by split_row(a). When mirrored,
 * rectangles are laid out in the flipped square; lines and indices still use
 * the arrangement's own coordinates. Throws PreconditionError when two
 * pebbles share a row.
 */
ForbiddingLineSet forbidding_lines(const GridArrangement& a);

struct InterceptWindow {
    std::int64_t row = 0;
    std::vector<mpq_class> intercepts;  // sorted, unit-square x
    std::vector<mpq_class> spacings;    // consecutive differences
    bool has_window = false;            // at least six intercepts
    std::array<mpq_class, 5> w{};       // narrowest six-intercept window
    mpq_class D;                        // w1 + ... + w5
    std::optional<mpq_class> B;         // min(4A, D), when T_min is known

    double D_value() const { return D.get_d(); }
};

/// T_min, when given, is the arrangement's minimum twice-area and fills B.
InterceptWindow intercept_spacings(const ForbiddingLineSet& f, std::int64_t row,
                                   std::optional<std::int64_t> t_min = std::nullopt);

/**
 * Columns of `row` closer than 2A to some forbidding-line intercept, with
 * A = T_min / (2 (K-1)^2). Sorted, unique, exact.
 */
std::vector<std::int64_t> excluded_columns(std::int64_t row, const ForbiddingLineSet& f,
                                           std::int64_t t_min, std::int64_t side);

/**
 * Upper/lower split encoding: header T_min, rank of the n occupied rows,
 * upper-half columns raw, lower-half columns as ranks within each row's
 * non-excluded columns. "Upper" is the larger half from split_row(); when
 * that is the bottom half the square is flipped first, and the row set
 * (written unflipped) tells the decoder so. Needs n even and distinct rows.
 */
WitnessReport encode_theorem2(const GridArrangement& a);

/// Decodes any witness kind; rejects truncated, padded, or non-canonical payloads.
GridArrangement decode_witness(WitnessKind kind, const BitString& payload, std::int64_t side,
                               std::size_t n);

/// (14 delta + slack) / (4 C1 n^3 log2 e).
double upper_bound_formula(double delta, double n, double c1, double slack = 0.0);

}  // namespace heilbronn
