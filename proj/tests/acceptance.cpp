// Acceptance suite: one PASS/FAIL line per criterion. Pass a criterion number
// to run only that one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heilbronn/constructions.hpp"
#include "heilbronn/experiments.hpp"
#include "heilbronn/geometry.hpp"
#include "heilbronn/ranking.hpp"
#include "heilbronn/witnesses.hpp"
#include "support.hpp"

using namespace heilbronn;
namespace ht = heilbronn::testing;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const unsigned kJobs = default_jobs();

// Scan shared by criteria 1 and 2.
const ScanResult& scaling_run() {
    static const ScanResult result = [] {
        const std::vector<std::size_t> ns{8, 16, 32, 64, 128};
        return scan(ns, 42, kJobs);
    }();
    return result;
}

Verdict criterion1() {
    Verdict v;
    const auto t0 = Clock::now();
    const ScanResult& s = scaling_run();
    v.detail << "slope=" << s.fit.slope << " r2=" << s.fit.r_squared << " (" << seconds_since(t0) << " s) ";
    v.require(s.fit.slope >= -3.3 && s.fit.slope <= -2.7, "slope in [-3.3, -2.7]");
    v.require(s.fit.r_squared >= 0.98, "r^2 >= 0.98");
    return v;
}

Verdict criterion2() {
    Verdict v;
    const ScanResult& s = scaling_run();
    std::vector<double> scaled;
    double log_sum = 0.0;
    for (const auto& m : s.estimates) {
        scaled.push_back(m.mean * std::pow(static_cast<double>(m.n), 3.0));
        log_sum += std::log(scaled.back());
    }
    const double gm = std::exp(log_sum / static_cast<double>(scaled.size()));
    v.detail << "geometric mean of mu*n^3 = " << gm << "; values";
    for (double x : scaled) {
        v.detail << ' ' << x;
        v.require(x <= 2.0 * gm && x >= gm / 2.0, "within factor 2");
    }
    return v;
}

Verdict criterion3() {
    Verdict v;
    const std::size_t n = 32, trials = 5000;
    std::vector<double> pilot = sample_min_areas(n, trials, 3001, kJobs);
    std::sort(pilot.begin(), pilot.end());
    const double t = pilot[trials / 4];
    const TailEstimate re = tail_probability(n, t, trials, 3002, kJobs);
    const TailEstimate one = tail_probability(n, 1.0, trials, 3002, kJobs);
    const TailEstimate zero = tail_probability(n, 0.0, trials, 3002, kJobs);
    v.detail << "t=" << t << " P(A<t)=" << re.fraction << " P(A<1)=" << one.fraction
             << " P(A<0)=" << zero.fraction;
    v.require(std::abs(re.fraction - 0.25) <= 0.03, "P(A<t) = 0.25 +- 0.03");
    v.require(one.fraction == 1.0, "P(A<1) = 1");
    v.require(zero.fraction == 0.0, "P(A<0) = 0");
    return v;
}

Verdict criterion4() {
    Verdict v;
    const auto t0 = Clock::now();
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23}) {
        const ErdosConstruction e = erdos_prime(p);
        const GridTriangle tri = min_area_triangle(e.arrangement, SearchMode::exhaustive);
        v.require(!find_collinear_triple(e.arrangement), "no collinear triple at p=" + std::to_string(p));
        v.require(tri.twice_area >= 1, "twice-area >= 1 at p=" + std::to_string(p));
        v.detail << "p=" << p << ":T=" << tri.twice_area << ' ';
    }
    const double secs = seconds_since(t0);
    v.detail << "(" << secs << " s)";
    v.require(secs < 1.0, "runtime < 1 s");
    return v;
}

// Decodes every strict prefix of the payload; all must fail.
bool truncations_fail(WitnessKind kind, const BitString& payload, std::int64_t side, std::size_t n) {
    for (std::size_t len = 0; len < payload.size(); ++len) {
        try {
            decode_witness(kind, payload.prefix(len), side, n);
            return false;
        } catch (const DecodeError&) {
        }
    }
    return true;
}

Verdict criterion5() {
    Verdict v;
    const auto t0 = Clock::now();

    std::size_t exhaustive = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        const mpz_class total = binomial(9, n);
        std::map<std::vector<GridPoint>, bool> seen;
        for (mpz_class r = 0; r < total; ++r) {
            const GridArrangement a = unrank_arrangement(r, 3, n);
            seen[a.points()] = true;
            if (rank_arrangement(a).value != r) v.require(false, "rank(unrank(r)) = r at K=3");
            ++exhaustive;
        }
        v.require(mpz_class(seen.size()) == total, "unrank is injective at K=3");
    }

    std::size_t random_ok = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        const GridArrangement a = sample_grid_arrangement(1024, 8, 5005, i);
        if (unrank_arrangement(rank_arrangement(a).value, 1024, 8) == a) ++random_ok;
    }
    v.require(random_ok == 1000, "1000 random round trips at K=1024, n=8");

    struct Case {
        WitnessKind kind;
        std::int64_t side;
        std::size_t n;
        std::function<GridArrangement(Rng&)> plant;
        std::function<WitnessReport(const GridArrangement&)> encode;
    };
    const std::vector<Case> cases{
        {WitnessKind::collinear, 1024, 8, [](Rng& r) { return ht::plant_collinear(1024, 8, r); },
         [](const GridArrangement& a) { return encode_collinear_witness(a); }},
        {WitnessKind::rowline, 1024, 8, [](Rng& r) { return ht::plant_shared_row(1024, 8, r); },
         [](const GridArrangement& a) { return encode_rowline_witness(a); }},
        {WitnessKind::small_triangle, 1024, 8, [](Rng& r) { return ht::plant_unit_triangle(1024, 8, r); },
         [](const GridArrangement& a) { return encode_small_triangle_witness(a); }},
        {WitnessKind::theorem2, 1 << 20, 16, [](Rng& r) { return ht::distinct_rows(1 << 20, 16, r); },
         [](const GridArrangement& a) { return encode_theorem2(a); }},
    };
    for (const auto& c : cases) {
        Rng rng(5006, static_cast<std::uint64_t>(c.kind));
        std::size_t round = 0, trunc = 0;
        for (int i = 0; i < 200; ++i) {
            const GridArrangement a = c.plant(rng);
            const WitnessReport rep = c.encode(a);
            if (decode_witness(c.kind, rep.payload, c.side, c.n) == a) ++round;
            if (truncations_fail(c.kind, rep.payload, c.side, c.n)) ++trunc;
        }
        v.detail << to_string(c.kind) << ":" << round << "/" << trunc << " ";
        v.require(round == 200, std::string(to_string(c.kind)) + " round trips");
        v.require(trunc == 200, std::string(to_string(c.kind)) + " truncations");
    }
    const double secs = seconds_since(t0);
    v.detail << "exhaustive=" << exhaustive << " random=" << random_ok << " (" << secs << " s)";
    v.require(secs < 60.0, "runtime < 1 min");
    return v;
}

Verdict criterion6() {
    Verdict v;
    constexpr std::int64_t side = std::int64_t{1} << 20;
    Rng rng(6006, 0);
    const GridArrangement col = ht::plant_collinear(side, 8, rng);
    const GridArrangement tri = ht::plant_unit_triangle(side, 8, rng);
    const WitnessReport c = encode_collinear_witness(col);
    const WitnessReport t = encode_small_triangle_witness(tri);
    v.detail << "baseline=" << c.baseline_length << " collinear savings=" << c.savings
             << " T=1 savings=" << t.savings;
    v.require(c.savings >= 4, "collinear savings >= 4");
    v.require(min_area_triangle(tri).twice_area == 1, "planted triangle is the smallest");
    v.require(t.savings >= 5, "T=1 savings >= 5");
    v.require(c.baseline_length == 305, "baseline matches exact binomial");
    return v;
}

Verdict criterion7() {
    Verdict v;
    const auto t0 = Clock::now();
    const std::int64_t side = 4;
    auto check = [&](std::size_t n, const char* name, auto encode) {
        const mpz_class total = binomial(16, n);
        std::map<std::int64_t, std::size_t> by_savings;
        std::size_t eligible = 0;
        for (mpz_class r = 0; r < total; ++r) {
            const GridArrangement a = unrank_arrangement(r, side, n);
            std::optional<WitnessReport> rep;
            try {
                rep = encode(a);
            } catch (const PreconditionError&) {
                continue;
            }
            ++eligible;
            ++by_savings[rep->savings];
        }
        for (std::int64_t delta = 0; delta <= 64; ++delta) {
            std::size_t count = 0;
            for (const auto& [s, k] : by_savings) {
                if (s >= delta) count += k;
            }
            const bool ok = mpz_class(count) * (mpz_class(1) << static_cast<unsigned>(delta)) <= total;
            v.require(ok, std::string(name) + " count bound at delta=" + std::to_string(delta));
        }
        const std::int64_t best = by_savings.empty() ? 0 : by_savings.rbegin()->first;
        v.detail << name << "(n=" << n << "):eligible=" << eligible << ",max_savings=" << best << ' ';
    };
    check(3, "collinear", [](const GridArrangement& a) { return encode_collinear_witness(a); });
    check(3, "rowline", [](const GridArrangement& a) { return encode_rowline_witness(a); });
    check(3, "small_triangle", [](const GridArrangement& a) { return encode_small_triangle_witness(a); });
    check(3, "theorem2", [](const GridArrangement& a) { return encode_theorem2(a); });
    check(4, "theorem2", [](const GridArrangement& a) { return encode_theorem2(a); });
    const double secs = seconds_since(t0);
    v.detail << "(" << secs << " s)";
    v.require(secs < 10.0, "runtime < 10 s");
    return v;
}

Verdict criterion8() {
    Verdict v;
    const DegenerateStats big = degenerate_structure_stats(std::int64_t{1} << 20, 16, 2000, 8008, kJobs);
    const DegenerateStats tiny = degenerate_structure_stats(2, 2, 10000, 8009, kJobs);
    v.detail << "K=2^20 n=16: collinear=" << big.collinear_frequency << " shared_row=" << big.shared_row_frequency
             << "; K=2 n=2: shared_row=" << tiny.shared_row_frequency;
    v.require(big.collinear_frequency <= 0.02, "collinear frequency <= 0.02");
    v.require(big.shared_row_frequency <= 0.02, "shared-row frequency <= 0.02");
    v.require(std::abs(tiny.shared_row_frequency - 1.0 / 3.0) <= 0.02, "K=2 shared row = 1/3 +- 0.02");
    return v;
}

// forbidding_lines(a) without the distinct-rows precondition.
ForbiddingLineSet lines_of(const GridArrangement& a) {
    if (!find_shared_row(a)) return forbidding_lines(a);
    std::vector<std::int64_t> ys;
    for (const auto& p : a.points()) ys.push_back(p.y);
    const HalfSplit hs = half_split(ys, a.side());
    std::vector<GridPoint> pts = a.points();
    if (hs.mirrored) {
        for (auto& p : pts) p.y = a.side() - 1 - p.y;
    }
    return forbidding_lines(a.side(), hs.mirrored ? a.side() - 1 - hs.row : hs.row, pts);
}

Verdict criterion9() {
    Verdict v;
    constexpr std::int64_t side = std::int64_t{1} << 20;
    const std::size_t n = 200, trials = 500;
    const double need = static_cast<double>(n * n) / 1e4;
    std::vector<std::size_t> line_counts(trials);
    std::vector<int> eligible(trials), round_trip(trials), self_excluded(trials);
    parallel_for(trials, kJobs, [&](std::size_t i) {
        const GridArrangement a = sample_grid_arrangement(side, n, 9009, i);
        const ForbiddingLineSet f = lines_of(a);
        line_counts[i] = f.lines.size();
        if (find_shared_row(a)) return;
        eligible[i] = 1;
        const std::int64_t t_min = min_area_triangle(a).twice_area;
        for (const auto& p : a.points()) {
            if (f.mirrored ? p.y < f.split_row : p.y > f.split_row) continue;
            const auto ex = excluded_columns(p.y, f, t_min, side);
            if (std::binary_search(ex.begin(), ex.end(), p.x)) self_excluded[i] = 1;
        }
        try {
            const WitnessReport rep = encode_theorem2(a);
            round_trip[i] = decode_witness(WitnessKind::theorem2, rep.payload, side, n) == a;
        } catch (const std::exception&) {
            round_trip[i] = 0;
        }
    });
    std::size_t enough = 0, elig = 0, rt = 0, bad = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        enough += static_cast<double>(line_counts[i]) >= need;
        elig += eligible[i];
        rt += eligible[i] && round_trip[i];
        bad += self_excluded[i];
    }
    std::vector<std::size_t> sorted = line_counts;
    std::sort(sorted.begin(), sorted.end());
    const double share = static_cast<double>(enough) / static_cast<double>(trials);
    v.detail << "lines>=" << need << " in " << share * 100 << "% (median " << sorted[trials / 2]
             << ", min " << sorted.front() << "); self-excluded " << bad << "; round trips " << rt << "/" << elig;
    v.require(share >= 0.95, "forbidding-line count >= n^2/10^4 in >= 95% of trials");
    v.require(bad == 0, "no lower pebble in its own excluded set");
    v.require(rt == elig, "theorem2 round trip on every eligible trial");
    return v;
}

Verdict criterion10() {
    Verdict v;
    const auto t0 = Clock::now();
    std::vector<double> values;
    for (std::size_t n = 3; n <= 10; ++n) {
        values.push_back(optimize_heilbronn(n, 8, 40000, 10010 + n, kJobs).value);
        v.detail << "n=" << n << ":" << values.back() << ' ';
    }
    v.require(values[0] >= 0.4999, "n=3 value >= 0.4999");
    v.require(values[1] >= 0.4999, "n=4 value >= 0.4999");
    for (std::size_t i = 2; i < values.size(); ++i) {
        v.require(values[i] <= values[i - 1], "nonincreasing at n=" + std::to_string(i + 3));
    }
    const double secs = seconds_since(t0);
    v.detail << "(" << secs << " s)";
    v.require(secs <= 300.0, "runtime <= 5 min");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8,
                                                         criterion9, criterion10};
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    bool all_pass = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<int>(i + 1) != only) continue;
        Verdict v = criteria[i]();
        all_pass = all_pass && v.pass;
        std::printf("criterion %2zu: %s  %s\n", i + 1, v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
