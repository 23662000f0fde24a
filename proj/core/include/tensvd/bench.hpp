#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tensvd/svd.hpp"
#include "tensvd/tensor.hpp"

namespace tensvd {

// Standard image-resolution scenarios for the timing comparison.
struct Scenario {
    std::string name;  // CLI spelling, e.g. "hd"
    std::string label; // display label, e.g. "HD"
    Shape dims;
};

// hd, fullhd, twok, qhd, qkuhd, fk, sk, ek.
const std::vector<Scenario>& standard_scenarios();

// Look up a named scenario or parse a custom "HxWxC" spec.
Scenario resolve_scenario(const std::string& spec);

// Truncation ranks matching a stored-fraction budget: r_n = ceil(alpha * I_n)
// with alpha found by bisection so that hosvd_storage_cost(dims, r) fits
// within fraction * element_count. Modes of extent <= 3 keep full rank
// (the RGB channel convention).
std::vector<std::int64_t> ranks_for_stored_fraction(const Shape& dims, double fraction);

// min / lower quartile / mean / median / upper quartile / max, with quartiles
// by linear interpolation of order statistics (R type-7).
struct SummaryStats {
    double min = 0, lq = 0, mean = 0, median = 0, uq = 0, max = 0;
};

SummaryStats summarize(std::vector<double> samples);
double quantile(std::vector<double> sorted_samples, double p);

// Uniform [0,1) tensor from a seedable mt19937_64 stream.
DenseTensor make_uniform_tensor(const Shape& dims, std::mt19937_64& rng);

struct BenchResult {
    Scenario scenario;
    int reps = 0;
    std::uint64_t seed = 0;
    std::vector<std::int64_t> hosvd_ranks;
    std::int64_t hosvd_stored = 0;   // stored elements, baseline
    std::int64_t tensvd_stored = 0;  // stored elements, last rep
    std::vector<double> tensvd_seconds;
    std::vector<double> hosvd_seconds;
    SummaryStats tensvd_stats;
    SummaryStats hosvd_stats;
    double median_time_ratio = 0.0; // hosvd median / tensvd median
};

// One scenario of the timing protocol: per rep, draw a fresh uniform tensor,
// run the truncated-HOSVD baseline at `ranks` and the sparse-core compressor
// at the baseline's resulting stored fraction, and time both. When `ranks` is
// empty they are derived from `fraction` via ranks_for_stored_fraction.
BenchResult run_benchmark(const Scenario& scenario, int reps, std::uint64_t seed,
                          double fraction = 0.1,
                          std::vector<std::int64_t> ranks = {},
                          SvdRoute baseline_route = SvdRoute::Gram);

} // namespace tensvd
