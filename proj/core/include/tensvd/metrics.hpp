#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>

#include "tensvd/tensor.hpp"

namespace tensvd {

// One evaluation run: reconstruction quality, storage accounting and the
// elapsed compression time.
struct QualityReport {
    double mse = 0.0;
    double err = 0.0;
    double psnr_db = 0.0;
    double cr_stored_fraction = 0.0;
    double cr_space_savings = 0.0;
    double elapsed_seconds = 0.0;

    // Flat key=value block, one field per line.
    std::string to_text() const;
    // Single JSON object with the same fields.
    std::string to_json() const;
};

// ||x - xhat||^2 normalized by the element count.
double mse(const DenseTensor& x, const DenseTensor& xhat);

// ||x - xhat|| / ||x||. Throws on a zero reference tensor.
double relative_error(const DenseTensor& x, const DenseTensor& xhat);

// 10*log10(peak^2 / MSE) in dB with peak = max(max(x), max(xhat)).
// Identical tensors give +infinity. `as_printed` divides by sqrt(MSE)
// instead, for auditing against sources that state the formula that way.
double psnr(const DenseTensor& x, const DenseTensor& xhat, bool as_printed = false);

// Same formula from precomputed peak and MSE.
double psnr_from(double peak, double mse_value, bool as_printed = false);

// (stored fraction, space savings); the two always sum to one.
std::pair<double, double> compression_ratio(std::int64_t stored_count,
                                            std::int64_t original_count);

// Monotonic wall-clock time around `action` only.
template <typename F>
auto timed(F&& action) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    auto result = std::forward<F>(action)();
    const std::chrono::duration<double> elapsed = clock::now() - start;
    return std::pair{std::move(result), elapsed.count()};
}

} // namespace tensvd
