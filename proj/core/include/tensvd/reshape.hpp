#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tensvd/tensor.hpp"

namespace tensvd {

// Invertible rearrangement of a tensor into a (usually higher-order, more
// balanced) shape with the same element count. The flat column-major buffer
// is reinterpreted, never permuted, so the round trip is bit-exact and every
// norm is conserved.
struct ReshapePlan {
    Shape original_dims;
    Shape reshaped_dims;

    // True when the plan fell back to a single mode holding more than one
    // element (prime element count); the pipeline still runs but gains
    // nothing.
    bool degenerate() const noexcept {
        return reshaped_dims.size() == 1 && !reshaped_dims.empty() && reshaped_dims[0] > 1;
    }
};

// Prime factorization of n, ascending, with multiplicity. n == 1 yields an
// empty list.
std::vector<std::uint64_t> prime_factorize(std::uint64_t n);

// Chooses the reshaped dims for `dims`. The element count is split into prime
// factors which are assigned greedily (largest prime first, each to the bin
// with the smallest current product; ties go to the highest bin index). With
// no order hint, orders 3..8 are searched and the one minimizing
// max(J)/min(J) wins, ties toward the smaller order. An explicit order_hint
// that exceeds the number of prime factors throws ShapeError. A prime element
// count falls back to an order-1 plan (see ReshapePlan::degenerate).
ReshapePlan plan_shape(const Shape& dims, std::optional<int> order_hint = std::nullopt);

// Reinterpret t's buffer under plan.reshaped_dims. Requires t.dims() ==
// plan.original_dims.
DenseTensor remap(const DenseTensor& t, const ReshapePlan& plan);

// Inverse of remap. Requires t.dims() == plan.reshaped_dims.
DenseTensor inverse_remap(const DenseTensor& t, const ReshapePlan& plan);

} // namespace tensvd
