#include "heilbronn/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>

#include "heilbronn/witnesses.hpp"

namespace heilbronn {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
    // Largest multiple of bound that fits, then reject the tail.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % bound;
}

PointSet sample_unit_square(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
    Rng rng(seed, stream);
    PointSet out(n);
    for (auto& p : out) {
        p.x = rng.uniform01();
        p.y = rng.uniform01();
    }
    return out;
}

GridArrangement sample_grid_arrangement(std::int64_t side, std::size_t n, std::uint64_t seed,
                                        std::uint64_t stream) {
    if (side < 2 || side > kMaxGridSide) throw std::invalid_argument("grid side must be in [2, 2^30]");
    const auto k = static_cast<std::uint64_t>(side);
    const std::uint64_t cells = k * k;
    if (n > cells) throw std::invalid_argument("more pebbles than grid points");
    Rng rng(seed, stream);
    // Dense requests draw the complement instead.
    const bool complement = n > cells / 2;
    const std::size_t draws = complement ? static_cast<std::size_t>(cells - n) : n;
    std::vector<std::uint64_t> picked;
    picked.reserve(draws);
    while (picked.size() < draws) {
        const std::uint64_t c = rng.below(cells);
        if (std::find(picked.begin(), picked.end(), c) == picked.end()) picked.push_back(c);
    }
    std::vector<std::uint64_t> chosen;
    if (complement) {
        std::sort(picked.begin(), picked.end());
        for (std::uint64_t c = 0; c < cells; ++c) {
            if (!std::binary_search(picked.begin(), picked.end(), c)) chosen.push_back(c);
        }
    } else {
        chosen = std::move(picked);
    }
    std::vector<GridPoint> pts;
    pts.reserve(n);
    for (std::uint64_t c : chosen) {
        pts.push_back({static_cast<std::int64_t>(c % k), static_cast<std::int64_t>(c / k)});
    }
    return GridArrangement(side, std::move(pts));
}

unsigned default_jobs() {
    if (const char* env = std::getenv("HEILBRONN_JOBS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(std::max(1U, jobs), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    return sum + carry;
}

std::vector<double> sample_min_areas(std::size_t n, std::size_t trials, std::uint64_t seed,
                                     unsigned jobs, const TrialSampler& sampler) {
    if (n < 3) throw std::invalid_argument("need n >= 3 points per trial");
    std::vector<double> areas(trials);
    parallel_for(trials, jobs, [&](std::size_t t) {
        const PointSet pts = sampler ? sampler(t) : sample_unit_square(n, seed, t);
        areas[t] = min_area_triangle(pts).area;
    });
    return areas;
}

MuEstimate summarize(std::size_t n, std::uint64_t seed, std::span<const double> areas) {
    MuEstimate est;
    est.n = n;
    est.seed = seed;
    est.trials = areas.size();
    std::vector<double> kept;
    kept.reserve(areas.size());
    for (double a : areas) {
        if (a == 0.0) {
            ++est.degenerate;
        } else {
            kept.push_back(a);
        }
    }
    if (kept.empty()) return est;
    const auto m = static_cast<double>(kept.size());
    est.mean = compensated_sum(kept) / m;
    std::vector<double> sq(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const double d = kept[i] - est.mean;
        sq[i] = d * d;
    }
    const double var = kept.size() > 1 ? compensated_sum(sq) / (m - 1.0) : 0.0;
    est.stderr_ = std::sqrt(var / m);
    est.lo95 = est.mean - 1.96 * est.stderr_;
    est.hi95 = est.mean + 1.96 * est.stderr_;
    return est;
}

MuEstimate estimate_mu(std::size_t n, std::size_t trials, std::uint64_t seed, unsigned jobs,
                       const TrialSampler& sampler) {
    if (trials < 2) throw std::invalid_argument("estimate_mu needs at least 2 trials");
    const auto areas = sample_min_areas(n, trials, seed, jobs, sampler);
    return summarize(n, seed, areas);
}

ScalingFit fit_exponent(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 3) throw std::invalid_argument("fit_exponent needs at least 3 samples");
    ScalingFit fit;
    fit.samples.assign(samples.begin(), samples.end());
    std::vector<double> xs, ys;
    for (const auto& [n, mu] : samples) {
        if (!(mu > 0.0) || !(n > 0.0)) throw std::invalid_argument("fit_exponent: n and mu must be positive");
        xs.push_back(std::log2(n));
        ys.push_back(std::log2(mu));
    }
    const auto m = static_cast<double>(xs.size());
    const double mx = compensated_sum(xs) / m;
    const double my = compensated_sum(ys) / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_exponent: all n are equal");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

std::size_t default_trials(std::size_t n) {
    return std::max<std::size_t>(500, 160000 / std::max<std::size_t>(n, 1));
}

ScanResult scan(std::span<const std::size_t> ns, std::uint64_t seed, unsigned jobs,
                const std::function<std::size_t(std::size_t)>& trials_for) {
    ScanResult out;
    std::vector<std::pair<double, double>> samples;
    for (std::size_t n : ns) {
        const std::size_t trials = trials_for ? trials_for(n) : default_trials(n);
        out.estimates.push_back(estimate_mu(n, trials, seed, jobs));
        samples.emplace_back(static_cast<double>(n), out.estimates.back().mean);
    }
    out.fit = fit_exponent(samples);
    return out;
}

TailEstimate tail_from_areas(std::size_t n, double threshold, std::uint64_t seed,
                             std::span<const double> areas) {
    if (!(threshold >= 0.0)) throw std::invalid_argument("tail threshold must be >= 0");
    TailEstimate t;
    t.n = n;
    t.threshold = threshold;
    t.trials = areas.size();
    t.seed = seed;
    for (double a : areas) {
        if (a == 0.0) {
            ++t.degenerate;
        } else if (a < threshold) {
            ++t.below;
        }
    }
    const std::size_t kept = t.trials - t.degenerate;
    t.fraction = kept == 0 ? 0.0 : static_cast<double>(t.below) / static_cast<double>(kept);
    return t;
}

TailEstimate tail_probability(std::size_t n, double threshold, std::size_t trials,
                              std::uint64_t seed, unsigned jobs) {
    if (!(threshold >= 0.0)) throw std::invalid_argument("tail threshold must be >= 0");
    const auto areas = sample_min_areas(n, trials, seed, jobs);
    return tail_from_areas(n, threshold, seed, areas);
}

DegenerateStats degenerate_structure_stats(std::int64_t side, std::size_t n, std::size_t trials,
                                           std::uint64_t seed, unsigned jobs) {
    DegenerateStats s;
    s.side = side;
    s.n = n;
    s.trials = trials;
    s.seed = seed;
    std::vector<unsigned char> col(trials), row(trials);
    parallel_for(trials, jobs, [&](std::size_t t) {
        const GridArrangement a = sample_grid_arrangement(side, n, seed, t);
        col[t] = find_collinear_triple(a).has_value() ? 1 : 0;
        row[t] = find_shared_row(a).has_value() ? 1 : 0;
    });
    for (std::size_t t = 0; t < trials; ++t) {
        s.collinear += col[t];
        s.shared_row += row[t];
    }
    if (trials > 0) {
        s.collinear_frequency = static_cast<double>(s.collinear) / static_cast<double>(trials);
        s.shared_row_frequency = static_cast<double>(s.shared_row) / static_cast<double>(trials);
    }
    return s;
}

namespace {

std::shared_ptr<const std::vector<double>> cached_baseline(std::size_t n, std::size_t trials,
                                                           std::uint64_t seed, unsigned jobs) {
    static std::mutex mutex;
    static std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>,
                    std::shared_ptr<const std::vector<double>>>
        cache;
    const auto key = std::make_tuple(n, trials, seed);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto areas = sample_min_areas(n, trials, seed, jobs);
    std::sort(areas.begin(), areas.end());
    auto shared = std::make_shared<const std::vector<double>>(std::move(areas));
    std::lock_guard lock(mutex);
    return cache.emplace(key, shared).first->second;
}

}  // namespace

PointSetAnalysis analyze_pointset(std::span<const UnitPoint> points, std::size_t baseline_trials,
                                  std::uint64_t baseline_seed, unsigned jobs) {
    const std::size_t n = points.size();
    if (n < 3) throw std::invalid_argument("analyze_pointset needs at least 3 points");
    if (baseline_trials == 0) throw std::invalid_argument("baseline needs at least one trial");
    PointSetAnalysis out;
    out.n = n;
    const UnitTriangle tri = min_area_triangle(points);
    out.area = tri.area;
    out.triangle = tri.idx;
    const double nn = static_cast<double>(n);
    out.scaled = out.area * nn * nn * nn;
    out.baseline_trials = baseline_trials;
    out.baseline_seed = baseline_seed;
    const auto base = cached_baseline(n, baseline_trials, baseline_seed, jobs);
    const auto lo = std::lower_bound(base->begin(), base->end(), out.area);
    const auto hi = std::upper_bound(base->begin(), base->end(), out.area);
    const double below = static_cast<double>(lo - base->begin());
    const double ties = static_cast<double>(hi - lo);
    out.percentile = out.area == 0.0 ? 0.0 : (below + 0.5 * ties) / static_cast<double>(base->size());
    return out;
}

}  // namespace heilbronn
