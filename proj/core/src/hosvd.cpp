#include "tensvd/hosvd.hpp"

#include <string>

namespace tensvd {

TuckerFactors t_hosvd(const DenseTensor& t, std::span<const std::int64_t> ranks,
                      SvdRoute route) {
    if (static_cast<int>(ranks.size()) != t.order())
        throw ShapeError("need one rank per mode");
    for (int n = 0; n < t.order(); ++n) {
        if (ranks[static_cast<std::size_t>(n)] < 1 ||
            ranks[static_cast<std::size_t>(n)] > t.dims()[static_cast<std::size_t>(n)])
            throw ShapeError("rank " + std::to_string(ranks[static_cast<std::size_t>(n)]) +
                             " out of range for mode " + std::to_string(n) + " of extent " +
                             std::to_string(t.dims()[static_cast<std::size_t>(n)]));
    }

    TuckerFactors f;
    f.factors.reserve(static_cast<std::size_t>(t.order()));
    for (int n = 0; n < t.order(); ++n) {
        auto spectral = leading_left_singular_vectors(
            unfold(t, n), static_cast<int>(ranks[static_cast<std::size_t>(n)]), route);
        f.factors.push_back(std::move(spectral.vectors));
    }

    f.core = t;
    for (int n = 0; n < t.order(); ++n)
        f.core = mode_n_product(f.core, f.factors[static_cast<std::size_t>(n)].transpose(), n);
    return f;
}

DenseTensor reconstruct(const TuckerFactors& f) {
    if (f.core.order() != static_cast<int>(f.factors.size()))
        throw ShapeError("core order does not match the factor count");
    DenseTensor x = f.core;
    for (int n = 0; n < x.order(); ++n) {
        if (f.factors[static_cast<std::size_t>(n)].cols() !=
            f.core.dims()[static_cast<std::size_t>(n)])
            throw ShapeError("factor " + std::to_string(n) + " does not match the core extent");
        x = mode_n_product(x, f.factors[static_cast<std::size_t>(n)], n);
    }
    return x;
}

std::int64_t hosvd_storage_cost(const Shape& dims, std::span<const std::int64_t> ranks) {
    if (dims.size() != ranks.size()) throw ShapeError("need one rank per mode");
    std::int64_t factors = 0;
    std::int64_t core = 1;
    for (std::size_t n = 0; n < dims.size(); ++n) {
        if (ranks[n] < 1 || ranks[n] > dims[n])
            throw ShapeError("rank out of range in storage accounting");
        factors += dims[n] * ranks[n];
        core *= ranks[n];
    }
    return factors + core;
}

} // namespace tensvd
