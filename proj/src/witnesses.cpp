#include "heilbronn/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "heilbronn/codes.hpp"
#include "heilbronn/ranking.hpp"

namespace heilbronn {

namespace {

using i128 = __int128;

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

i128 abs128(i128 v) { return v < 0 ? -v : v; }

// a*u + b*v = gcd(a, b) >= 0.
i128 ext_gcd(i128 a, i128 b, i128& u, i128& v) {
    i128 old_r = a, r = b, old_u = 1, cu = 0, old_v = 0, cv = 1;
    while (r != 0) {
        const i128 q = floor_div(old_r, r);
        i128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_u - q * cu;
        old_u = cu;
        cu = t;
        t = old_v - q * cv;
        old_v = cv;
        cv = t;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_u = -old_u;
        old_v = -old_v;
    }
    u = old_u;
    v = old_v;
    return old_r;
}

std::size_t sub_arrangement_width(std::int64_t side, std::size_t n) {
    return baseline_length(side, n - 1);
}

void append_sub_arrangement(BitString& out, const GridArrangement& sub) {
    const ArrangementIndex idx = rank_arrangement(sub);
    out.append_big(idx.value, ceil_log2(idx.domain_size));
}

GridArrangement read_sub_arrangement(BitReader& in, std::int64_t side, std::size_t count) {
    const auto k = static_cast<std::uint64_t>(side);
    const mpz_class domain = binomial(k * k, count);
    const std::size_t start = in.position();
    const mpz_class rank = in.read_big(ceil_log2(domain));
    if (rank >= domain) {
        throw DecodeError("sub-arrangement rank out of range", start);
    }
    return unrank_arrangement(rank, side, count);
}

WitnessReport finish(WitnessKind kind, BitString payload, std::int64_t side, std::size_t n) {
    WitnessReport rep;
    rep.kind = kind;
    rep.witness_length = payload.size();
    rep.baseline_length = baseline_length(side, n);
    rep.savings = static_cast<std::int64_t>(rep.baseline_length) -
                  static_cast<std::int64_t>(rep.witness_length);
    rep.payload = std::move(payload);
    return rep;
}

// Index of p in the arrangement with pebble `removed` deleted.
std::size_t index_without(std::size_t p, std::size_t removed) { return p > removed ? p - 1 : p; }

// Primitive direction of Q - P, normalized to point right (or up when vertical).
std::pair<std::int64_t, std::int64_t> primitive_direction(const GridPoint& p, const GridPoint& q) {
    const std::int64_t g = lattice_points_half_open(p, q);
    std::int64_t a = (q.x - p.x) / g;
    std::int64_t b = (q.y - p.y) / g;
    if (a < 0 || (a == 0 && b < 0)) {
        a = -a;
        b = -b;
    }
    return {a, b};
}

// Range of t with start + t*step inside [0, side-1].
std::pair<i128, i128> axis_range(i128 start, i128 step, i128 side) {
    if (step > 0) return {ceil_div(-start, step), floor_div(side - 1 - start, step)};
    if (step < 0) return {ceil_div(side - 1 - start, step), floor_div(-start, step)};
    return {std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()};
}

// Grid points of the line through p with direction (a, b): t in [lo, hi].
std::pair<i128, i128> line_range(const GridPoint& p, std::int64_t a, std::int64_t b,
                                 std::int64_t side) {
    const auto [xl, xh] = axis_range(p.x, a, side);
    const auto [yl, yh] = axis_range(p.y, b, side);
    return {std::max(xl, yl), std::min(xh, yh)};
}

struct Intercept {
    i128 num;  // grid-unit x = num / den
    i128 den;  // > 0
};

Intercept intercept(const ForbiddingLine& line, std::int64_t row) {
    const i128 den = line.p.y - line.q.y;
    const i128 num = static_cast<i128>(line.q.x) * den +
                     static_cast<i128>(line.p.x - line.q.x) * (row - line.q.y);
    return {num, den};
}

mpz_class to_mpz(i128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class out = (hi << 64) + lo;
    return neg ? mpz_class(-out) : out;
}

std::int64_t min_twice_area(const GridArrangement& a) {
    if (a.size() < 3) return 0;
    return min_area_triangle(a).twice_area;
}

void check_grid(std::int64_t side, std::size_t n) {
    if (side < 2 || side > kMaxGridSide) {
        throw std::invalid_argument("grid side must be in [2, 2^30]");
    }
    const auto cells = static_cast<std::uint64_t>(side) * static_cast<std::uint64_t>(side);
    if (n > cells) {
        throw std::invalid_argument("more pebbles than grid points");
    }
}

// ---- decoders ----------------------------------------------------------

GridArrangement decode_collinear(BitReader& in, std::int64_t side, std::size_t n) {
    if (n < 3) throw std::invalid_argument("collinear witness needs n >= 3");
    const GridArrangement sub = read_sub_arrangement(in, side, n - 1);
    const std::size_t pair_pos = in.position();
    const auto pair_rank = in.read_uint(ceil_log2(binomial(n - 1, 2)));
    if (pair_rank >= binomial(n - 1, 2)) throw DecodeError("pair index out of range", pair_pos);
    const auto [ip, iq] = unrank_pair(pair_rank, n - 1);
    const GridPoint p = sub[ip];
    const GridPoint q = sub[iq];
    const auto [a, b] = primitive_direction(p, q);
    const auto [lo, hi] = line_range(p, a, b, side);
    const std::size_t r_pos = in.position();
    const auto offset = in.read_uint(ceil_log2(static_cast<std::uint64_t>(side)));
    const i128 t = lo + static_cast<i128>(offset);
    if (t > hi) throw DecodeError("point index beyond the line's grid points", r_pos);
    const GridPoint r{static_cast<std::int64_t>(p.x + t * a), static_cast<std::int64_t>(p.y + t * b)};
    if (sub.contains(r)) throw DecodeError("decoded pebble lands on an occupied cell", r_pos);
    return sub.with(r);
}

GridArrangement decode_rowline(BitReader& in, std::int64_t side, std::size_t n) {
    if (n < 2) throw std::invalid_argument("rowline witness needs n >= 2");
    const GridArrangement sub = read_sub_arrangement(in, side, n - 1);
    const std::size_t p_pos = in.position();
    const auto ip = in.read_uint(ceil_log2(static_cast<std::uint64_t>(n - 1)));
    if (ip >= n - 1) throw DecodeError("pebble index out of range", p_pos);
    const GridPoint p = sub[ip];
    const std::size_t r_pos = in.position();
    const auto col = static_cast<std::int64_t>(in.read_uint(ceil_log2(static_cast<std::uint64_t>(side - 1))));
    if (col >= side - 1) throw DecodeError("column index out of range", r_pos);
    const GridPoint r{col >= p.x ? col + 1 : col, p.y};
    if (sub.contains(r)) throw DecodeError("decoded pebble lands on an occupied cell", r_pos);
    return sub.with(r);
}

GridPoint candidate_point(const GridPoint& p, const GridPoint& q, std::uint64_t index) {
    const i128 g = lattice_points_half_open(p, q);
    const i128 a = (q.x - p.x) / g;
    const i128 b = (q.y - p.y) / g;
    const i128 s2 = a * a + b * b;
    const i128 k = static_cast<i128>(index) / (2 * g) + 1;
    const bool below = ((static_cast<i128>(index) / g) % 2) == 1;
    const i128 pos = static_cast<i128>(index) % g;
    const i128 e = below ? -k : k;
    // Base solution of a*Y - b*X = e from a*u + b*v = 1.
    i128 u = 0, v = 0;
    ext_gcd(a, b, u, v);
    const i128 x0 = -e * v;
    const i128 y0 = e * u;
    const i128 dot0 = a * x0 + b * y0;
    const i128 t = ceil_div(pos * s2 - dot0, s2);
    const i128 x = x0 + t * a;
    const i128 y = y0 + t * b;
    const i128 gx = p.x + x;
    const i128 gy = p.y + y;
    if (gx < std::numeric_limits<std::int64_t>::min() / 4 || gx > std::numeric_limits<std::int64_t>::max() / 4 ||
        gy < std::numeric_limits<std::int64_t>::min() / 4 || gy > std::numeric_limits<std::int64_t>::max() / 4) {
        return {-1, -1};
    }
    return {static_cast<std::int64_t>(gx), static_cast<std::int64_t>(gy)};
}

GridArrangement decode_small_triangle(BitReader& in, std::int64_t side, std::size_t n) {
    if (n < 3) throw std::invalid_argument("small-triangle witness needs n >= 3");
    const GridArrangement sub = read_sub_arrangement(in, side, n - 1);
    const std::size_t pair_pos = in.position();
    const auto pair_rank = in.read_uint(ceil_log2(binomial(n - 1, 2)));
    if (pair_rank >= binomial(n - 1, 2)) throw DecodeError("pair index out of range", pair_pos);
    const auto [ip, iq] = unrank_pair(pair_rank, n - 1);
    const std::size_t r_pos = in.position();
    const std::uint64_t index = decode_nat(in);
    if (index >= (std::uint64_t{1} << 62)) throw DecodeError("candidate index too large", r_pos);
    const GridPoint r = candidate_point(sub[ip], sub[iq], index);
    if (r.x < 0 || r.y < 0 || r.x >= side || r.y >= side) {
        throw DecodeError("candidate index points outside the grid", r_pos);
    }
    if (sub.contains(r)) throw DecodeError("decoded pebble lands on an occupied cell", r_pos);
    return sub.with(r);
}

std::size_t header_width(std::int64_t side) {
    return 2 * ceil_log2(static_cast<std::uint64_t>(side - 1)) + 1;
}

GridArrangement decode_theorem2(BitReader& in, std::int64_t side, std::size_t n) {
    if (n % 2 != 0 || n == 0) throw std::invalid_argument("theorem2 witness needs even n >= 2");
    const auto k = static_cast<std::uint64_t>(side);
    if (n > k) throw std::invalid_argument("theorem2 witness needs n <= K");
    const std::size_t t_pos = in.position();
    const auto t_min = static_cast<std::int64_t>(in.read_uint(header_width(side)));
    const i128 span = side - 1;
    if (static_cast<i128>(t_min) > span * span) throw DecodeError("T_min exceeds (K-1)^2", t_pos);

    const mpz_class row_domain = binomial(k, n);
    const std::size_t rows_pos = in.position();
    const mpz_class row_rank = in.read_big(ceil_log2(row_domain));
    if (row_rank >= row_domain) throw DecodeError("row-subset rank out of range", rows_pos);
    const auto raw_rows = unrank_combination(row_rank, k, n);
    const std::vector<std::int64_t> unflipped(raw_rows.begin(), raw_rows.end());
    const HalfSplit hs = half_split(unflipped, side);
    std::vector<std::int64_t> rows = unflipped;
    if (hs.mirrored) {
        for (auto& y : rows) y = side - 1 - y;
    }
    std::sort(rows.begin(), rows.end(), std::greater<>());  // top to bottom

    const std::size_t half = n / 2;
    std::vector<GridPoint> upper;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t pos = in.position();
        const auto x = in.read_uint(ceil_log2(k));
        if (x >= k) throw DecodeError("column out of range", pos);
        upper.push_back({static_cast<std::int64_t>(x), rows[i]});
    }
    const std::int64_t split = rows[half];
    const ForbiddingLineSet lines = forbidding_lines(side, split, upper);

    std::vector<GridPoint> all = upper;
    for (std::size_t i = half; i < n; ++i) {
        const std::int64_t row = rows[i];
        const auto excl = excluded_columns(row, lines, t_min, side);
        const std::uint64_t allowed = k - excl.size();
        const std::size_t pos = in.position();
        if (allowed == 0) throw DecodeError("row has no allowed column", pos);
        const auto rank = static_cast<std::int64_t>(in.read_uint(ceil_log2(allowed)));
        if (static_cast<std::uint64_t>(rank) >= allowed) throw DecodeError("column rank out of range", pos);
        // rank-th column not in excl.
        std::int64_t col = rank;
        for (std::int64_t e : excl) {
            if (e <= col) {
                ++col;
            } else {
                break;
            }
        }
        all.push_back({col, row});
    }
    if (hs.mirrored) {
        for (auto& p : all) p.y = side - 1 - p.y;
    }
    return GridArrangement(side, std::move(all));
}

}  // namespace

std::string_view to_string(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::collinear: return "collinear";
        case WitnessKind::rowline: return "rowline";
        case WitnessKind::small_triangle: return "small_triangle";
        case WitnessKind::theorem2: return "theorem2";
    }
    return "unknown";
}

WitnessKind witness_kind_from_string(std::string_view name) {
    if (name == "collinear") return WitnessKind::collinear;
    if (name == "rowline") return WitnessKind::rowline;
    if (name == "small_triangle" || name == "small-triangle") return WitnessKind::small_triangle;
    if (name == "theorem2") return WitnessKind::theorem2;
    throw std::invalid_argument("unknown witness kind '" + std::string(name) + "'");
}

std::optional<Triple> find_collinear_triple(const GridArrangement& a) {
    const auto& p = a.points();
    const std::size_t n = p.size();
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                if (collinear(p[i], p[j], p[k])) return Triple{i, j, k};
            }
        }
    }
    return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> find_shared_row(const GridArrangement& a) {
    const auto& p = a.points();
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (p[i].y == p[j].y) return std::pair{i, j};
        }
    }
    return std::nullopt;
}

WitnessReport encode_collinear_witness(const GridArrangement& a) {
    const auto triple = find_collinear_triple(a);
    if (!triple) throw PreconditionError("collinear witness: no three pebbles are collinear");
    const std::size_t n = a.size();
    const auto [i, j, r] = *triple;
    const GridArrangement sub = a.without(r);

    BitString out;
    append_sub_arrangement(out, sub);
    out.append_uint(rank_pair(i, j, n - 1), ceil_log2(binomial(n - 1, 2)));
    const auto [da, db] = primitive_direction(a[i], a[j]);
    const auto [lo, hi] = line_range(a[i], da, db, a.side());
    const i128 t = da != 0 ? static_cast<i128>(a[r].x - a[i].x) / da
                           : static_cast<i128>(a[r].y - a[i].y) / db;
    out.append_uint(static_cast<std::uint64_t>(t - lo), ceil_log2(static_cast<std::uint64_t>(a.side())));
    return finish(WitnessKind::collinear, std::move(out), a.side(), n);
}

WitnessReport encode_rowline_witness(const GridArrangement& a) {
    const auto shared = find_shared_row(a);
    if (!shared) throw PreconditionError("rowline witness: all pebbles are on distinct rows");
    const std::size_t n = a.size();
    const auto [ip, ir] = *shared;
    const GridArrangement sub = a.without(ir);

    BitString out;
    append_sub_arrangement(out, sub);
    out.append_uint(ip, ceil_log2(static_cast<std::uint64_t>(n - 1)));
    const std::int64_t xr = a[ir].x;
    const std::int64_t col = xr < a[ip].x ? xr : xr - 1;
    out.append_uint(static_cast<std::uint64_t>(col), ceil_log2(static_cast<std::uint64_t>(a.side() - 1)));
    return finish(WitnessKind::rowline, std::move(out), a.side(), n);
}

SmallTriangleGeometry small_triangle_geometry(const GridArrangement& a, const Triple& triple) {
    Triple t = triple;
    std::sort(t.begin(), t.end());
    if (t[2] >= a.size() || t[0] == t[1] || t[1] == t[2]) {
        throw std::invalid_argument("small-triangle witness: triple must name three distinct pebbles");
    }
    const std::int64_t twice = twice_signed_area(a[t[0]], a[t[1]], a[t[2]]);
    if (twice == 0) throw std::invalid_argument("small-triangle witness: degenerate triple");

    auto len2 = [&](std::size_t u, std::size_t v) {
        const i128 dx = a[v].x - a[u].x;
        const i128 dy = a[v].y - a[u].y;
        return dx * dx + dy * dy;
    };
    // Longest side, first of (01, 02, 12) on ties.
    const std::array<std::pair<std::size_t, std::size_t>, 3> sides{
        std::pair{t[0], t[1]}, std::pair{t[0], t[2]}, std::pair{t[1], t[2]}};
    const std::array<std::size_t, 3> opposite{t[2], t[1], t[0]};
    std::size_t best = 0;
    for (std::size_t s = 1; s < 3; ++s) {
        if (len2(sides[s].first, sides[s].second) > len2(sides[best].first, sides[best].second)) best = s;
    }

    SmallTriangleGeometry geo;
    geo.p = sides[best].first;
    geo.q = sides[best].second;
    geo.r = opposite[best];
    const GridPoint& p = a[geo.p];
    const GridPoint& q = a[geo.q];
    const GridPoint& r = a[geo.r];
    geo.g = lattice_points_half_open(p, q);
    const std::int64_t cross = twice_signed_area(p, q, r);
    geo.twice_area = cross < 0 ? -cross : cross;
    geo.f = geo.twice_area / geo.g;

    const i128 ua = (q.x - p.x) / geo.g;
    const i128 ub = (q.y - p.y) / geo.g;
    const i128 s2 = ua * ua + ub * ub;
    const i128 dot = ua * (r.x - p.x) + ub * (r.y - p.y);
    const i128 pos = floor_div(dot, s2);
    if (pos < 0 || pos >= geo.g) {
        throw std::logic_error("small-triangle witness: R projects outside [P, Q)");
    }
    const i128 sign = cross > 0 ? 0 : 1;
    geo.candidate_index = static_cast<std::uint64_t>((geo.f - 1) * 2 * static_cast<i128>(geo.g) +
                                                     sign * geo.g + pos);
    return geo;
}

WitnessReport encode_small_triangle_witness(const GridArrangement& a, const Triple& triple) {
    const SmallTriangleGeometry geo = small_triangle_geometry(a, triple);
    const std::size_t n = a.size();
    const GridArrangement sub = a.without(geo.r);

    BitString out;
    append_sub_arrangement(out, sub);
    out.append_uint(rank_pair(index_without(geo.p, geo.r), index_without(geo.q, geo.r), n - 1),
                    ceil_log2(binomial(n - 1, 2)));
    out.append(encode_nat(geo.candidate_index));
    return finish(WitnessKind::small_triangle, std::move(out), a.side(), n);
}

WitnessReport encode_small_triangle_witness(const GridArrangement& a) {
    const GridTriangle tri = min_area_triangle(a);
    if (tri.twice_area == 0) {
        throw PreconditionError("small-triangle witness: smallest triangle is degenerate");
    }
    return encode_small_triangle_witness(a, tri.idx);
}

std::size_t small_triangle_length_bound(std::int64_t side, std::size_t n, std::int64_t twice_area) {
    const std::size_t index_bits = ceil_log2(static_cast<std::uint64_t>(2 * twice_area));
    return sub_arrangement_width(side, n) + ceil_log2(binomial(n - 1, 2)) +
           sd_prime_length(index_bits);
}

HalfSplit half_split(std::span<const std::int64_t> rows, std::int64_t side) {
    if (rows.empty()) throw std::invalid_argument("half_split: no rows");
    std::vector<std::int64_t> sorted(rows.begin(), rows.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t half = sorted.size() / 2;
    const std::int64_t from_top = sorted[sorted.size() - 1 - half];
    const std::int64_t from_bottom = sorted[half];
    // Room above from_top is K-1-from_top; room below from_bottom is from_bottom.
    if (from_bottom > side - 1 - from_top) return {from_bottom, true};
    return {from_top, false};
}

HalfSplit split_row(const GridArrangement& a) {
    if (a.size() == 0) throw std::invalid_argument("split_row: empty arrangement");
    if (find_shared_row(a)) throw PreconditionError("two pebbles share a horizontal grid line");
    std::vector<std::int64_t> rows;
    for (const auto& p : a.points()) rows.push_back(p.y);
    return half_split(rows, a.side());
}

std::int64_t horizontal_strip(std::int64_t y, std::int64_t side) {
    const i128 from_top = side - 1 - y;
    return static_cast<std::int64_t>(std::max<i128>(0, ceil_div(10 * from_top, side - 1) - 1));
}

std::int64_t vertical_strip(std::int64_t x, std::int64_t side) {
    return static_cast<std::int64_t>(std::max<i128>(0, ceil_div(5 * static_cast<i128>(x), side - 1) - 1));
}

ForbiddingLineSet forbidding_lines(std::int64_t side, std::int64_t split,
                                   std::span<const GridPoint> points) {
    ForbiddingLineSet out;
    out.side = side;
    out.split_row = split;
    std::vector<std::size_t> top, bottom;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (p.y <= split || vertical_strip(p.x, side) != 2) continue;
        const auto h = horizontal_strip(p.y, side);
        if (h == 0) top.push_back(i);
        if (h == 4) bottom.push_back(i);
    }
    out.rect_top_count = top.size();
    out.rect_bottom_count = bottom.size();
    for (std::size_t t : top) {
        for (std::size_t b : bottom) {
            ForbiddingLine line{t, b, points[t], points[b]};
            const Intercept at0 = intercept(line, 0);
            if (at0.num < 0 || at0.num > static_cast<i128>(side - 1) * at0.den) {
                throw std::logic_error("forbidding line misses the bottom side");
            }
            out.lines.push_back(line);
        }
    }
    return out;
}

ForbiddingLineSet forbidding_lines(const GridArrangement& a) {
    const HalfSplit hs = split_row(a);
    if (!hs.mirrored) return forbidding_lines(a.side(), hs.row, a.points());
    const std::int64_t top = a.side() - 1;
    std::vector<GridPoint> flipped = a.points();
    for (auto& p : flipped) p.y = top - p.y;
    ForbiddingLineSet f = forbidding_lines(a.side(), top - hs.row, flipped);
    for (auto& line : f.lines) {
        line.p.y = top - line.p.y;
        line.q.y = top - line.q.y;
    }
    f.split_row = hs.row;
    f.mirrored = true;
    return f;
}

InterceptWindow intercept_spacings(const ForbiddingLineSet& f, std::int64_t row,
                                   std::optional<std::int64_t> t_min) {
    InterceptWindow w;
    w.row = row;
    const mpz_class span = static_cast<long>(f.side - 1);
    for (const auto& line : f.lines) {
        const Intercept at = intercept(line, row);
        mpq_class x(to_mpz(at.num), to_mpz(at.den) * span);
        x.canonicalize();
        w.intercepts.push_back(x);
    }
    std::sort(w.intercepts.begin(), w.intercepts.end());
    for (std::size_t i = 1; i < w.intercepts.size(); ++i) {
        w.spacings.push_back(w.intercepts[i] - w.intercepts[i - 1]);
    }
    if (w.intercepts.size() >= 6) {
        w.has_window = true;
        std::size_t best = 0;
        for (std::size_t i = 1; i + 5 < w.intercepts.size(); ++i) {
            if (w.intercepts[i + 5] - w.intercepts[i] < w.intercepts[best + 5] - w.intercepts[best]) best = i;
        }
        for (std::size_t s = 0; s < 5; ++s) w.w[s] = w.spacings[best + s];
        w.D = w.intercepts[best + 5] - w.intercepts[best];
        if (t_min) {
            // 4A = 4 T / (2 (K-1)^2) = 2 T / (K-1)^2.
            mpq_class four_a(mpz_class(2) * mpz_class(static_cast<long>(*t_min)), span * span);
            four_a.canonicalize();
            w.B = std::min(four_a, w.D);
        }
    }
    return w;
}

std::vector<std::int64_t> excluded_columns(std::int64_t row, const ForbiddingLineSet& f,
                                           std::int64_t t_min, std::int64_t side) {
    std::vector<std::int64_t> out;
    if (t_min <= 0) return out;
    const i128 span = side - 1;
    // Distance below 2A in unit length is distance below T_min/(K-1) in grid units.
    const i128 reach = static_cast<i128>(t_min) / span + 1;
    for (const auto& line : f.lines) {
        const Intercept at = intercept(line, row);
        const i128 centre = floor_div(at.num, at.den);
        const i128 lo = std::max<i128>(0, centre - reach);
        const i128 hi = std::min<i128>(side - 1, centre + reach + 1);
        for (i128 c = lo; c <= hi; ++c) {
            if (abs128(c * at.den - at.num) * span < static_cast<i128>(t_min) * at.den) {
                out.push_back(static_cast<std::int64_t>(c));
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

WitnessReport encode_theorem2(const GridArrangement& a) {
    const std::size_t n = a.size();
    const std::int64_t side = a.side();
    if (n == 0 || n % 2 != 0) throw PreconditionError("theorem2 witness needs an even, positive n");
    const HalfSplit hs = split_row(a);  // also rejects shared rows
    const auto k = static_cast<std::uint64_t>(side);
    const std::int64_t t_min = min_twice_area(a);

    BitString out;
    out.append_uint(static_cast<std::uint64_t>(t_min), header_width(side));
    std::vector<std::uint64_t> rows;
    for (const auto& p : a.points()) rows.push_back(static_cast<std::uint64_t>(p.y));
    std::sort(rows.begin(), rows.end());
    out.append_big(rank_combination(rows, k), ceil_log2(binomial(k, n)));

    // From here on the larger half is on top.
    std::vector<GridPoint> by_row = a.points();
    if (hs.mirrored) {
        for (auto& p : by_row) p.y = side - 1 - p.y;
    }
    const std::int64_t split = hs.mirrored ? side - 1 - hs.row : hs.row;
    std::sort(by_row.begin(), by_row.end(),
              [](const GridPoint& l, const GridPoint& r) { return l.y > r.y; });

    const std::size_t half = n / 2;
    std::vector<GridPoint> upper(by_row.begin(), by_row.begin() + static_cast<std::ptrdiff_t>(half));
    for (const auto& p : upper) out.append_uint(static_cast<std::uint64_t>(p.x), ceil_log2(k));

    const ForbiddingLineSet lines = forbidding_lines(side, split, upper);
    for (std::size_t i = half; i < n; ++i) {
        const GridPoint& p = by_row[i];
        const auto excl = excluded_columns(p.y, lines, t_min, side);
        if (std::binary_search(excl.begin(), excl.end(), p.x)) {
            throw std::logic_error("theorem2 witness: lower pebble inside its own excluded set");
        }
        const auto before = static_cast<std::uint64_t>(
            std::lower_bound(excl.begin(), excl.end(), p.x) - excl.begin());
        const std::uint64_t allowed = k - excl.size();
        out.append_uint(static_cast<std::uint64_t>(p.x) - before, ceil_log2(allowed));
    }
    return finish(WitnessKind::theorem2, std::move(out), side, n);
}

GridArrangement decode_witness(WitnessKind kind, const BitString& payload, std::int64_t side,
                               std::size_t n) {
    check_grid(side, n);
    BitReader in(payload);
    GridArrangement out;
    try {
        switch (kind) {
            case WitnessKind::collinear: out = decode_collinear(in, side, n); break;
            case WitnessKind::rowline: out = decode_rowline(in, side, n); break;
            case WitnessKind::small_triangle: out = decode_small_triangle(in, side, n); break;
            case WitnessKind::theorem2: out = decode_theorem2(in, side, n); break;
        }
    } catch (const DecodeError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        // Rejections raised while assembling the arrangement (e.g. duplicate cells).
        throw DecodeError(std::string("inconsistent payload: ") + e.what(), in.position());
    }
    in.expect_end(to_string(kind));

    // Only the encoder's own output is accepted: re-encode and compare.
    WitnessReport again;
    try {
        switch (kind) {
            case WitnessKind::collinear: again = encode_collinear_witness(out); break;
            case WitnessKind::rowline: again = encode_rowline_witness(out); break;
            case WitnessKind::small_triangle: {
                BitReader head(payload);
                const GridArrangement sub = read_sub_arrangement(head, side, n - 1);
                const auto [ip, iq] = unrank_pair(head.read_uint(ceil_log2(binomial(n - 1, 2))), n - 1);
                const auto find = [&](const GridPoint& g) {
                    return static_cast<std::size_t>(
                        std::lower_bound(out.points().begin(), out.points().end(), g) - out.points().begin());
                };
                std::size_t r = 0;
                while (sub.contains(out[r])) ++r;
                again = encode_small_triangle_witness(out, Triple{find(sub[ip]), find(sub[iq]), r});
                break;
            }
            case WitnessKind::theorem2: again = encode_theorem2(out); break;
        }
    } catch (const std::exception& e) {
        throw DecodeError(std::string("payload is not a canonical encoding: ") + e.what(), payload.size());
    }
    if (again.payload != payload) {
        throw DecodeError("payload is not the canonical encoding of the decoded arrangement", payload.size());
    }
    return out;
}

double upper_bound_formula(double delta, double n, double c1, double slack) {
    return (14.0 * delta + slack) / (4.0 * c1 * n * n * n * std::numbers::log2e);
}

}  // namespace heilbronn
