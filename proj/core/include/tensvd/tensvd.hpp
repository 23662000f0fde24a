#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tensvd/reshape.hpp"
#include "tensvd/tensor.hpp"

namespace tensvd {

// Exactly one of two stopping rules for the sparse core selection:
//   epsilon:         relative Frobenius reconstruction error budget in (0,1)
//   stored_fraction: stored-element budget as a fraction of the original
//                    element count, in (0,1)
class CompressionTarget {
public:
    enum class Kind { Epsilon, StoredFraction };

    static CompressionTarget epsilon(double eps);
    static CompressionTarget stored_fraction(double fraction);

    Kind kind() const noexcept { return kind_; }
    bool is_epsilon() const noexcept { return kind_ == Kind::Epsilon; }
    double value() const noexcept { return value_; }

private:
    CompressionTarget(Kind kind, double value) : kind_(kind), value_(value) {}
    Kind kind_;
    double value_;
};

// Core entries kept by the selection, ordered by decreasing magnitude
// (ties by ascending position). Positions are flat column-major indices into
// the reshaped core.
struct SparseCore {
    std::vector<std::uint64_t> positions;
    std::vector<double> values;

    std::int64_t entry_count() const noexcept { return static_cast<std::int64_t>(values.size()); }
};

// Everything needed to reconstruct: the reshape plan, the full square factor
// matrices of the reshaped tensor, the selected core entries, the total
// energy ||Z||^2 and the stored-element accounting value.
struct CompressedTensor {
    ReshapePlan plan;
    std::vector<Matrix> factors; // factors[m] is J_m x J_m, orthonormal
    SparseCore sparse_core;
    double total_energy = 0.0;
    std::int64_t stored_count = 0; // sum_m J_m^2 + 2 * entry_count
};

// Stored-element count for a plan with k kept core entries: the full square
// factors cost sum_m J_m^2 and every entry costs two numbers (value +
// position).
std::int64_t tensvd_storage_cost(const ReshapePlan& plan, std::int64_t entry_count);

// Greedy magnitude selection over the core entries. For an epsilon target the
// prefix stops as soon as the residual energy satisfies
// (total - selected) / total <= eps^2, which bounds the relative
// reconstruction error by eps exactly (orthonormal factors). For a
// stored-fraction target the prefix takes as many entries as fit in
// floor(fraction * element_count) stored values after the factor cost;
// a budget below factor_cost throws InfeasibleTargetError.
SparseCore select_core_entries(const DenseTensor& core, const CompressionTarget& target,
                               std::int64_t factor_cost);

// Compress: reshape to a balanced higher-order tensor, compute full
// orthonormal factors of every unfolding via the Gram matrices, project to
// the core, keep the largest-magnitude core entries per `target`.
CompressedTensor compress(const DenseTensor& t, const CompressionTarget& target,
                          std::optional<int> order_hint = std::nullopt);

// Scatter the sparse core, apply the factors mode by mode and undo the
// reshape. Throws ShapeError on out-of-range positions.
DenseTensor decompress(const CompressedTensor& c);

} // namespace tensvd
