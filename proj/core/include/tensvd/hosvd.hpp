#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tensvd/svd.hpp"
#include "tensvd/tensor.hpp"

namespace tensvd {

// Tucker representation: one orthonormal factor matrix per mode plus a dense
// core. factors[n] has t.dims()[n] rows and ranks[n] columns; the core has
// shape (ranks[0], ..., ranks[N-1]).
struct TuckerFactors {
    std::vector<Matrix> factors;
    DenseTensor core;
};

// Truncated HOSVD: per-mode leading left singular vectors of the unfoldings,
// then the core as the projection of t onto all factors. Modes are processed
// sequentially in order 0..N-1.
TuckerFactors t_hosvd(const DenseTensor& t, std::span<const std::int64_t> ranks,
                      SvdRoute route = SvdRoute::Gram);

// core x_0 U0 x_1 U1 ... x_{N-1} U_{N-1}.
DenseTensor reconstruct(const TuckerFactors& f);

// Number of real values a truncated Tucker representation stores:
// sum_n I_n * r_n for the factors plus prod_n r_n for the core.
std::int64_t hosvd_storage_cost(const Shape& dims, std::span<const std::int64_t> ranks);

} // namespace tensvd
