#include "tensvd/reshape.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tensvd {

namespace {

// Greedy split of the prime multiset over `order` bins: largest prime first,
// each into the bin with the smallest running product. Ties go to the most
// recently updated bin (lowest index among never-updated ones).
Shape greedy_bins(const std::vector<std::uint64_t>& primes_ascending, int order) {
    Shape bins(static_cast<std::size_t>(order), 1);
    std::vector<std::int64_t> updated_at(static_cast<std::size_t>(order), -1);
    std::int64_t step = 0;
    for (auto it = primes_ascending.rbegin(); it != primes_ascending.rend(); ++it) {
        std::size_t target = 0;
        for (std::size_t b = 1; b < bins.size(); ++b) {
            if (bins[b] < bins[target] ||
                (bins[b] == bins[target] && updated_at[b] > updated_at[target]))
                target = b;
        }
        bins[target] *= static_cast<std::int64_t>(*it);
        updated_at[target] = step++;
    }
    return bins;
}

double imbalance(const Shape& bins) {
    const auto [lo, hi] = std::minmax_element(bins.begin(), bins.end());
    return static_cast<double>(*hi) / static_cast<double>(*lo);
}

} // namespace

std::vector<std::uint64_t> prime_factorize(std::uint64_t n) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

ReshapePlan plan_shape(const Shape& dims, std::optional<int> order_hint) {
    const std::int64_t count = element_count(dims);
    const auto primes = prime_factorize(static_cast<std::uint64_t>(count));
    const int max_order = static_cast<int>(primes.size());

    ReshapePlan plan;
    plan.original_dims = dims;

    if (order_hint) {
        const int m = *order_hint;
        if (m < 1)
            throw ShapeError("order hint must be at least 1");
        if (m > std::max(max_order, 1))
            throw ShapeError("order hint " + std::to_string(m) + " infeasible: " +
                             std::to_string(count) + " has only " + std::to_string(max_order) +
                             " prime factors");
        plan.reshaped_dims = greedy_bins(primes, std::max(m, 1));
        return plan;
    }

    if (max_order <= 1) {
        // Prime (or single-element) count: nothing to split.
        plan.reshaped_dims = {count};
        return plan;
    }

    const int lo = std::min(3, max_order);
    const int hi = std::min(8, max_order);
    Shape best;
    double best_imbalance = 0.0;
    for (int m = lo; m <= hi; ++m) {
        Shape candidate = greedy_bins(primes, m);
        const double score = imbalance(candidate);
        if (best.empty() || score < best_imbalance) {
            best = std::move(candidate);
            best_imbalance = score;
        }
    }
    plan.reshaped_dims = std::move(best);
    return plan;
}

DenseTensor remap(const DenseTensor& t, const ReshapePlan& plan) {
    if (t.dims() != plan.original_dims)
        throw ShapeError("tensor shape does not match the plan's original dims");
    return DenseTensor(plan.reshaped_dims,
                       std::vector<double>(t.data(), t.data() + t.size()));
}

DenseTensor inverse_remap(const DenseTensor& t, const ReshapePlan& plan) {
    if (t.dims() != plan.reshaped_dims)
        throw ShapeError("tensor shape does not match the plan's reshaped dims");
    return DenseTensor(plan.original_dims,
                       std::vector<double>(t.data(), t.data() + t.size()));
}

} // namespace tensvd
