#include "heilbronn/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace heilbronn {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> fields(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

template <typename T>
T parse_number(std::string_view s, std::size_t line, const char* what) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DataError("cannot parse " + std::string(what) + " '" + std::string(s) + "'", line);
    }
    return v;
}

// Calls visit(line_no, content) for every non-blank, non-comment line.
template <typename Visit>
void for_each_line(std::istream& in, Visit&& visit) {
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto s = trim(raw);
        if (s.empty() || s.front() == '#') continue;
        visit(line_no, s);
    }
}

void write_comment(std::ostream& out, const std::string& comment) {
    if (comment.empty()) return;
    std::istringstream lines(comment);
    std::string l;
    while (std::getline(lines, l)) out << "# " << l << '\n';
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw DataError("cannot open " + path.string(), 0);
    return f;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write " + path.string(), 0);
    return f;
}

}  // namespace

PointSet read_pointset(std::istream& in) {
    PointSet out;
    for_each_line(in, [&](std::size_t line, std::string_view s) {
        const auto f = fields(s);
        if (f.size() != 2) throw DataError("expected \"x y\"", line);
        const UnitPoint p{parse_number<double>(f[0], line, "x"), parse_number<double>(f[1], line, "y")};
        if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
            throw DataError("coordinate outside the unit square", line);
        }
        out.push_back(p);
    });
    return out;
}

void write_pointset(std::ostream& out, const PointSet& points, const std::string& comment) {
    write_comment(out, comment);
    char buf[64];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
        out << buf;
    }
}

PointSet load_pointset(const std::filesystem::path& path) {
    auto f = open_in(path);
    return read_pointset(f);
}

void save_pointset(const PointSet& points, const std::filesystem::path& path, const std::string& comment) {
    auto f = open_out(path);
    write_pointset(f, points, comment);
}

GridArrangement read_grid(std::istream& in) {
    bool header = false;
    std::int64_t side = 0;
    std::size_t n = 0;
    std::size_t header_line = 0;
    std::vector<GridPoint> pts;
    for_each_line(in, [&](std::size_t line, std::string_view s) {
        const auto f = fields(s);
        if (!header) {
            if (f.size() != 3 || f[0] != "grid") throw DataError("expected header \"grid <K> <n>\"", line);
            side = parse_number<std::int64_t>(f[1], line, "K");
            n = parse_number<std::size_t>(f[2], line, "n");
            if (side < 2 || side > kMaxGridSide) throw DataError("K must be in [2, 2^30]", line);
            header = true;
            header_line = line;
            return;
        }
        if (f.size() != 2) throw DataError("expected \"i j\"", line);
        const GridPoint p{parse_number<std::int64_t>(f[0], line, "column"),
                          parse_number<std::int64_t>(f[1], line, "row")};
        if (p.x < 0 || p.y < 0 || p.x >= side || p.y >= side) {
            throw DataError("grid point outside the K x K grid", line);
        }
        for (const auto& q : pts) {
            if (q == p) throw DataError("duplicate cell", line);
        }
        if (pts.size() == n) throw DataError("more points than the header announces", line);
        pts.push_back(p);
    });
    if (!header) throw DataError("missing grid header", 0);
    if (pts.size() != n) {
        throw DataError("header announces " + std::to_string(n) + " points, found " +
                            std::to_string(pts.size()),
                        header_line);
    }
    return GridArrangement(side, std::move(pts));
}

void write_grid(std::ostream& out, const GridArrangement& a, const std::string& comment) {
    write_comment(out, comment);
    out << "grid " << a.side() << ' ' << a.size() << '\n';
    for (const auto& p : a.points()) out << p.x << ' ' << p.y << '\n';
}

GridArrangement load_grid(const std::filesystem::path& path) {
    auto f = open_in(path);
    return read_grid(f);
}

void save_grid(const GridArrangement& a, const std::filesystem::path& path, const std::string& comment) {
    auto f = open_out(path);
    write_grid(f, a, comment);
}

WitnessFile read_witness(std::istream& in) {
    WitnessFile w;
    int stage = 0;
    for_each_line(in, [&](std::size_t line, std::string_view s) {
        if (stage == 0) {
            const auto f = fields(s);
            if (f.size() != 4 || f[0] != "HW1" || !f[2].starts_with("K=") || !f[3].starts_with("n=")) {
                throw DataError("expected \"HW1 <kind> K=<K> n=<n>\"", line);
            }
            try {
                w.kind = witness_kind_from_string(f[1]);
            } catch (const std::invalid_argument& e) {
                throw DataError(e.what(), line);
            }
            w.side = parse_number<std::int64_t>(f[2].substr(2), line, "K");
            w.n = parse_number<std::size_t>(f[3].substr(2), line, "n");
            stage = 1;
        } else if (stage == 1) {
            try {
                w.payload = BitString::from_hex(s);
            } catch (const std::invalid_argument& e) {
                throw DataError(e.what(), line);
            }
            stage = 2;
        } else {
            throw DataError("unexpected content after the payload", line);
        }
    });
    if (stage != 2) throw DataError("witness file needs a header and a payload line", 0);
    return w;
}

void write_witness(std::ostream& out, const WitnessFile& w) {
    out << "HW1 " << to_string(w.kind) << " K=" << w.side << " n=" << w.n << '\n'
        << w.payload.to_hex() << '\n';
}

WitnessFile load_witness(const std::filesystem::path& path) {
    auto f = open_in(path);
    return read_witness(f);
}

void save_witness(const WitnessFile& w, const std::filesystem::path& path) {
    auto f = open_out(path);
    write_witness(f, w);
}

}  // namespace heilbronn
