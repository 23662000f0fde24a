#include "tensvd/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tensvd/hosvd.hpp"
#include "tensvd/metrics.hpp"
#include "tensvd/tensvd.hpp"

namespace tensvd {

const std::vector<Scenario>& standard_scenarios() {
    static const std::vector<Scenario> scenarios{
        {"hd", "HD", {1280, 720, 3}},        {"fullhd", "FullHD", {1920, 1080, 3}},
        {"twok", "TwoK", {2048, 1080, 3}},   {"qhd", "QHD", {2560, 1440, 3}},
        {"qkuhd", "QKUHD", {3840, 2160, 3}}, {"fk", "FK", {5120, 2880, 3}},
        {"sk", "SK", {6144, 3456, 3}},       {"ek", "EK", {7680, 4320, 3}},
    };
    return scenarios;
}

Scenario resolve_scenario(const std::string& spec) {
    for (const Scenario& s : standard_scenarios())
        if (s.name == spec) return s;
    // Custom "HxWxC" shape.
    Shape dims;
    std::size_t at = 0;
    while (at < spec.size()) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(spec.substr(at), &used);
        } catch (const std::exception&) {
            throw Error("unknown scenario '" + spec + "' (expected a name or HxWxC)");
        }
        if (v < 1) throw Error("scenario extents must be positive");
        dims.push_back(v);
        at += used;
        if (at < spec.size()) {
            if (spec[at] != 'x' && spec[at] != 'X')
                throw Error("unknown scenario '" + spec + "' (expected a name or HxWxC)");
            ++at;
        }
    }
    if (dims.size() < 2) throw Error("custom scenario needs at least two extents");
    return Scenario{spec, spec, std::move(dims)};
}

std::vector<std::int64_t> ranks_for_stored_fraction(const Shape& dims, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw Error("stored fraction must lie strictly between 0 and 1");
    const std::int64_t budget =
        static_cast<std::int64_t>(std::floor(fraction * static_cast<double>(element_count(dims))));

    auto ranks_at = [&](double alpha) {
        std::vector<std::int64_t> r(dims.size());
        for (std::size_t n = 0; n < dims.size(); ++n) {
            if (dims[n] <= 3) {
                r[n] = dims[n]; // channel-like modes keep full rank
            } else {
                r[n] = std::clamp<std::int64_t>(
                    static_cast<std::int64_t>(std::ceil(alpha * static_cast<double>(dims[n]))),
                    1, dims[n]);
            }
        }
        return r;
    };

    const std::int64_t floor_cost = hosvd_storage_cost(dims, ranks_at(0.0));
    if (floor_cost > budget)
        throw Error("stored fraction too small for rank-1 truncation of this shape");

    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hosvd_storage_cost(dims, ranks_at(mid)) <= budget)
            lo = mid;
        else
            hi = mid;
    }
    return ranks_at(lo);
}

double quantile(std::vector<double> sorted_samples, double p) {
    if (sorted_samples.empty()) throw Error("quantile of an empty sample");
    const std::size_t n = sorted_samples.size();
    if (n == 1) return sorted_samples[0];
    const double h = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double w = h - static_cast<double>(lo);
    return sorted_samples[lo] * (1.0 - w) + sorted_samples[hi] * w;
}

SummaryStats summarize(std::vector<double> samples) {
    if (samples.empty()) throw Error("summary of an empty sample");
    std::sort(samples.begin(), samples.end());
    SummaryStats s;
    s.min = samples.front();
    s.max = samples.back();
    s.lq = quantile(samples, 0.25);
    s.median = quantile(samples, 0.5);
    s.uq = quantile(samples, 0.75);
    s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) /
             static_cast<double>(samples.size());
    return s;
}

DenseTensor make_uniform_tensor(const Shape& dims, std::mt19937_64& rng) {
    DenseTensor t(dims);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (std::int64_t i = 0; i < t.size(); ++i) t[i] = uniform(rng);
    return t;
}

BenchResult run_benchmark(const Scenario& scenario, int reps, std::uint64_t seed,
                          double fraction, std::vector<std::int64_t> ranks,
                          SvdRoute baseline_route) {
    if (reps < 1) throw Error("reps must be at least 1");

    BenchResult result;
    result.scenario = scenario;
    result.reps = reps;
    result.seed = seed;
    result.hosvd_ranks =
        ranks.empty() ? ranks_for_stored_fraction(scenario.dims, fraction) : std::move(ranks);
    result.hosvd_stored = hosvd_storage_cost(scenario.dims, result.hosvd_ranks);

    // The matched stored fraction handed to the sparse-core compressor.
    const double matched = static_cast<double>(result.hosvd_stored) /
                           static_cast<double>(element_count(scenario.dims));
    const auto target = CompressionTarget::stored_fraction(matched);

    std::mt19937_64 rng(seed);
    for (int rep = 0; rep < reps; ++rep) {
        const DenseTensor t = make_uniform_tensor(scenario.dims, rng);

        auto [compressed, t_seconds] = timed([&] { return compress(t, target); });
        result.tensvd_seconds.push_back(t_seconds);
        result.tensvd_stored = compressed.stored_count;

        auto [baseline, h_seconds] =
            timed([&] { return t_hosvd(t, result.hosvd_ranks, baseline_route); });
        result.hosvd_seconds.push_back(h_seconds);
        (void)baseline;
    }

    result.tensvd_stats = summarize(result.tensvd_seconds);
    result.hosvd_stats = summarize(result.hosvd_seconds);
    result.median_time_ratio = result.hosvd_stats.median / result.tensvd_stats.median;
    return result;
}

} // namespace tensvd
