#include "heilbronn/constructions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "heilbronn/experiments.hpp"
#include "heilbronn/witnesses.hpp"

namespace heilbronn {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (std::int64_t d = 3; d <= p / d; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

ErdosConstruction erdos_prime(std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (p > kMaxGridSide) throw std::invalid_argument("prime exceeds the maximum grid side");
    std::vector<GridPoint> pts;
    pts.reserve(static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < p; ++i) {
        pts.push_back({i, static_cast<std::int64_t>((static_cast<__int128>(i) * i) % p)});
    }
    ErdosConstruction out;
    out.p = p;
    out.arrangement = GridArrangement(p, std::move(pts));
    if (find_collinear_triple(out.arrangement)) {
        throw std::logic_error("Erdos construction produced a collinear triple");
    }
    if (p >= 3) {
        out.min_twice_area = min_area_triangle(out.arrangement).twice_area;
        const auto pp = static_cast<double>(p);
        out.area_cell_scale = static_cast<double>(out.min_twice_area) / (2.0 * pp * pp);
        out.area_grid_scale = normalize_area(out.min_twice_area, p);
    }
    return out;
}

PointSet erdos_unit_square(std::int64_t p) {
    const ErdosConstruction e = erdos_prime(p);
    PointSet out;
    const auto pp = static_cast<double>(p);
    for (const auto& g : e.arrangement.points()) {
        out.push_back({(static_cast<double>(g.x) + 0.5) / pp, (static_cast<double>(g.y) + 0.5) / pp});
    }
    return out;
}

namespace {

struct RestartOutcome {
    PointSet points;
    double value = -1.0;
    std::size_t iterations = 0;
};

PointSet random_points(std::size_t n, Rng& rng) {
    PointSet pts(n);
    for (auto& p : pts) {
        p.x = rng.uniform01();
        p.y = rng.uniform01();
    }
    return pts;
}

RestartOutcome climb(std::size_t n, std::size_t steps, std::uint64_t seed, std::size_t restart) {
    Rng rng(seed, restart);
    RestartOutcome best;
    PointSet cur = random_points(n, rng);
    UnitTriangle cur_tri = min_area_triangle(cur, SearchMode::exhaustive);
    double step = kInitialStep;
    std::size_t streak = 0;
    auto keep_best = [&] {
        if (cur_tri.area > best.value) {
            best.value = cur_tri.area;
            best.points = cur;
        }
    };
    keep_best();
    for (std::size_t it = 0; it < steps; ++it) {
        ++best.iterations;
        const std::size_t who = (rng.next() & 1U) != 0 ? cur_tri.idx[rng.below(3)]
                                                       : static_cast<std::size_t>(rng.below(n));
        PointSet trial = cur;
        trial[who].x = std::clamp(trial[who].x + step * (2.0 * rng.uniform01() - 1.0), 0.0, 1.0);
        trial[who].y = std::clamp(trial[who].y + step * (2.0 * rng.uniform01() - 1.0), 0.0, 1.0);
        const UnitTriangle tri = min_area_triangle(trial, SearchMode::exhaustive);
        if (tri.area > cur_tri.area) {
            cur = std::move(trial);
            cur_tri = tri;
            streak = 0;
            keep_best();
            continue;
        }
        if (++streak == kRejectionStreak) {
            streak = 0;
            step *= kStepDecay;
            if (step < kMinStep) {
                cur = random_points(n, rng);
                cur_tri = min_area_triangle(cur, SearchMode::exhaustive);
                step = kInitialStep;
                keep_best();
            }
        }
    }
    return best;
}

}  // namespace

OptimizerResult optimize_heilbronn(std::size_t n, std::size_t restarts, std::size_t steps,
                                   std::uint64_t seed, unsigned jobs) {
    if (n < 3 || n > 16) throw std::invalid_argument("optimize_heilbronn supports 3 <= n <= 16");
    if (restarts == 0) throw std::invalid_argument("optimize_heilbronn needs at least one restart");
    std::vector<RestartOutcome> runs(restarts);
    parallel_for(restarts, jobs, [&](std::size_t r) { runs[r] = climb(n, steps, seed, r); });

    OptimizerResult out;
    out.seed = seed;
    std::size_t best = 0;
    for (std::size_t r = 0; r < restarts; ++r) {
        out.iterations += runs[r].iterations;
        if (runs[r].value > runs[best].value) best = r;
    }
    out.best_restart = best;
    out.points = runs[best].points;
    out.value = min_area_triangle(out.points, SearchMode::exhaustive).area;
    return out;
}

PointSet corners_plus_random(std::size_t n, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("corners_plus_random needs n >= 4");
    PointSet out{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    const PointSet extra = sample_unit_square(n - 4, seed, 0);
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

}  // namespace heilbronn
