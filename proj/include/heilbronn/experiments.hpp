#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "heilbronn/geometry.hpp"

namespace heilbronn {

/// SplitMix64 finalizer; used to derive per-stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed of stream `stream` under master seed `seed`: mix64(seed ^ mix64(stream + golden)).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/**
 * Platform-independent generator: std::mt19937_64 (its output sequence is
 * fixed by the standard) seeded from stream_seed(). Uniform reals use the
 * top 53 bits, so they are multiples of 2^-53 in [0, 1).
 */
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(stream_seed(seed, stream)) {}

    std::uint64_t next() { return engine_(); }
    double uniform01() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }
    /// Uniform integer in [0, bound), unbiased by rejection.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

PointSet sample_unit_square(std::size_t n, std::uint64_t seed, std::uint64_t stream);

/// Uniform over all C(K^2, n) arrangements. Throws if n > K^2.
GridArrangement sample_grid_arrangement(std::int64_t side, std::size_t n, std::uint64_t seed,
                                        std::uint64_t stream);

/// HEILBRONN_JOBS if set, else the hardware concurrency (at least 1).
unsigned default_jobs();

/// Runs body(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

/// Neumaier-compensated sum in the given order.
double compensated_sum(std::span<const double> values);

/// Produces the point set for trial i. Defaults to sample_unit_square(n, seed, i).
using TrialSampler = std::function<PointSet(std::size_t trial)>;

/// Minimum triangle area of each trial, indexed by trial.
std::vector<double> sample_min_areas(std::size_t n, std::size_t trials, std::uint64_t seed,
                                     unsigned jobs = 1, const TrialSampler& sampler = {});

struct MuEstimate {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::size_t degenerate = 0;  // trials with A exactly 0, left out of the mean
    double mean = 0.0;
    double stderr_ = 0.0;
    double lo95 = 0.0;
    double hi95 = 0.0;
    std::uint64_t seed = 0;
};

MuEstimate estimate_mu(std::size_t n, std::size_t trials, std::uint64_t seed, unsigned jobs = 1,
                       const TrialSampler& sampler = {});

/// Summary of already-sampled areas (zeros counted as degenerate).
MuEstimate summarize(std::size_t n, std::uint64_t seed, std::span<const double> areas);

struct ScalingFit {
    std::vector<std::pair<double, double>> samples;  // (n, mu)
    double slope = 0.0;
    double intercept = 0.0;  // log2 of the fitted constant
    double r_squared = 0.0;
};

/// Least squares on (log2 n, log2 mu). Needs >= 3 samples with mu > 0.
ScalingFit fit_exponent(std::span<const std::pair<double, double>> samples);

/// max(500, floor(160000 / n)).
std::size_t default_trials(std::size_t n);

struct ScanResult {
    std::vector<MuEstimate> estimates;
    ScalingFit fit;
};

/// estimate_mu for every n (trials from `trials_for`, default_trials if empty), then the fit.
ScanResult scan(std::span<const std::size_t> ns, std::uint64_t seed, unsigned jobs = 1,
                const std::function<std::size_t(std::size_t)>& trials_for = {});

struct TailEstimate {
    std::size_t n = 0;
    double threshold = 0.0;
    std::size_t trials = 0;
    std::size_t below = 0;
    std::size_t degenerate = 0;  // exact zeros, counted separately
    double fraction = 0.0;       // P(A < t) among non-degenerate trials
    std::uint64_t seed = 0;
};

TailEstimate tail_probability(std::size_t n, double threshold, std::size_t trials,
                              std::uint64_t seed, unsigned jobs = 1);

/// Fraction of values strictly below t among the positive ones.
TailEstimate tail_from_areas(std::size_t n, double threshold, std::uint64_t seed,
                             std::span<const double> areas);

struct DegenerateStats {
    std::int64_t side = 0;
    std::size_t n = 0;
    std::size_t trials = 0;
    std::size_t collinear = 0;
    std::size_t shared_row = 0;
    double collinear_frequency = 0.0;
    double shared_row_frequency = 0.0;
    std::uint64_t seed = 0;
};

DegenerateStats degenerate_structure_stats(std::int64_t side, std::size_t n, std::size_t trials,
                                           std::uint64_t seed, unsigned jobs = 1);

struct PointSetAnalysis {
    std::size_t n = 0;
    double area = 0.0;
    double scaled = 0.0;      // A * n^3
    double percentile = 0.0;  // share of the random baseline below A (ties count half)
    std::size_t baseline_trials = 0;
    std::uint64_t baseline_seed = 0;
    std::array<std::size_t, 3> triangle{};
};

/**
 * Where the point set's smallest triangle falls within the distribution of
 * A for n uniform points. Baselines are cached per (n, seed, trials).
 */
PointSetAnalysis analyze_pointset(std::span<const UnitPoint> points, std::size_t baseline_trials,
                                  std::uint64_t baseline_seed, unsigned jobs = 1);

}  // namespace heilbronn
