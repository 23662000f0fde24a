#include "tensvd/tensvd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tensvd/svd.hpp"

namespace tensvd {

namespace {

void check_unit_interval(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0))
        throw Error(std::string(name) + " must lie strictly between 0 and 1");
}

} // namespace

CompressionTarget CompressionTarget::epsilon(double eps) {
    check_unit_interval(eps, "epsilon");
    return CompressionTarget(Kind::Epsilon, eps);
}

CompressionTarget CompressionTarget::stored_fraction(double fraction) {
    check_unit_interval(fraction, "stored fraction");
    return CompressionTarget(Kind::StoredFraction, fraction);
}

std::int64_t tensvd_storage_cost(const ReshapePlan& plan, std::int64_t entry_count) {
    if (entry_count < 0) throw Error("entry count must be nonnegative");
    std::int64_t cost = 2 * entry_count;
    for (std::int64_t j : plan.reshaped_dims) cost += j * j;
    return cost;
}

SparseCore select_core_entries(const DenseTensor& core, const CompressionTarget& target,
                               std::int64_t factor_cost) {
    const std::int64_t count = core.size();

    // Magnitude order, ties by ascending position.
    std::vector<std::uint64_t> order(static_cast<std::size_t>(count));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        const double ma = std::abs(core[static_cast<std::int64_t>(a)]);
        const double mb = std::abs(core[static_cast<std::int64_t>(b)]);
        if (ma != mb) return ma > mb;
        return a < b;
    });

    std::int64_t keep = 0;
    if (target.is_epsilon()) {
        // Residual energies as suffix sums over the sorted magnitudes; free of
        // cancellation, so the stopping rule is exact even near zero.
        std::vector<double> residual(static_cast<std::size_t>(count) + 1, 0.0);
        for (std::int64_t i = count - 1; i >= 0; --i) {
            const double v = core[static_cast<std::int64_t>(order[static_cast<std::size_t>(i)])];
            residual[static_cast<std::size_t>(i)] =
                residual[static_cast<std::size_t>(i) + 1] + v * v;
        }
        const double total = residual[0];
        if (total <= 0.0)
            throw Error("epsilon target requires a nonzero tensor");
        const double budget = target.value() * target.value() * total;
        while (keep < count && residual[static_cast<std::size_t>(keep)] > budget) ++keep;
    } else {
        const std::int64_t budget =
            static_cast<std::int64_t>(std::floor(target.value() * static_cast<double>(count)));
        if (budget < factor_cost) {
            const double min_fraction =
                static_cast<double>(factor_cost) / static_cast<double>(count);
            std::ostringstream msg;
            msg << "stored fraction " << target.value()
                << " cannot hold the factor matrices; minimum achievable is " << min_fraction;
            throw InfeasibleTargetError(msg.str(), min_fraction);
        }
        keep = std::min((budget - factor_cost) / 2, count);
    }

    SparseCore sc;
    sc.positions.assign(order.begin(), order.begin() + keep);
    sc.values.reserve(static_cast<std::size_t>(keep));
    for (std::int64_t i = 0; i < keep; ++i)
        sc.values.push_back(core[static_cast<std::int64_t>(sc.positions[static_cast<std::size_t>(i)])]);
    return sc;
}

CompressedTensor compress(const DenseTensor& t, const CompressionTarget& target,
                          std::optional<int> order_hint) {
    if (target.is_epsilon() && squared_norm(t) == 0.0)
        throw Error("epsilon target requires a nonzero tensor");

    CompressedTensor c;
    c.plan = plan_shape(t.dims(), order_hint);
    const DenseTensor z = remap(t, c.plan);

    std::int64_t factor_cost = 0;
    c.factors.reserve(c.plan.reshaped_dims.size());
    for (int m = 0; m < z.order(); ++m) {
        const std::int64_t jm = z.dims()[static_cast<std::size_t>(m)];
        auto spectral =
            leading_left_singular_vectors(unfold(z, m), static_cast<int>(jm), SvdRoute::Gram);
        c.factors.push_back(std::move(spectral.vectors));
        factor_cost += jm * jm;
    }

    DenseTensor core = z;
    for (int m = 0; m < z.order(); ++m)
        core = mode_n_product(core, c.factors[static_cast<std::size_t>(m)].transpose(), m);

    c.sparse_core = select_core_entries(core, target, factor_cost);
    c.total_energy = squared_norm(z);
    c.stored_count = tensvd_storage_cost(c.plan, c.sparse_core.entry_count());
    return c;
}

DenseTensor decompress(const CompressedTensor& c) {
    DenseTensor core(c.plan.reshaped_dims);
    const std::int64_t count = core.size();
    for (std::size_t i = 0; i < c.sparse_core.positions.size(); ++i) {
        const std::uint64_t pos = c.sparse_core.positions[i];
        if (pos >= static_cast<std::uint64_t>(count))
            throw ShapeError("sparse core position " + std::to_string(pos) +
                             " out of range for core of " + std::to_string(count) + " elements");
        core[static_cast<std::int64_t>(pos)] = c.sparse_core.values[i];
    }

    if (c.factors.size() != c.plan.reshaped_dims.size())
        throw ShapeError("factor count does not match the reshaped order");
    DenseTensor z = std::move(core);
    for (int m = 0; m < z.order(); ++m) {
        const Matrix& u = c.factors[static_cast<std::size_t>(m)];
        if (u.rows() != u.cols() || u.rows() != c.plan.reshaped_dims[static_cast<std::size_t>(m)])
            throw ShapeError("factor " + std::to_string(m) + " is not square of the mode extent");
        z = mode_n_product(z, u, m);
    }
    return inverse_remap(z, c.plan);
}

} // namespace tensvd
