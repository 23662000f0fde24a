#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tensvd/errors.hpp"

namespace tensvd {

using Matrix = Eigen::MatrixXd;
using Shape = std::vector<std::int64_t>;

// Product of all extents. Throws ShapeError on an empty shape or a
// non-positive extent.
std::int64_t element_count(const Shape& dims);

// Dense real tensor of arbitrary order, elements stored column-major
// (first index fastest). Treated as an immutable value after it has been
// filled; all operations below are pure functions.
class DenseTensor {
public:
    DenseTensor() = default;

    // Zero-filled tensor of the given shape.
    explicit DenseTensor(Shape dims);

    // Takes ownership of an existing column-major buffer.
    DenseTensor(Shape dims, std::vector<double> data);

    const Shape& dims() const noexcept { return dims_; }
    int order() const noexcept { return static_cast<int>(dims_.size()); }
    std::int64_t size() const noexcept { return static_cast<std::int64_t>(data_.size()); }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }
    std::span<const double> values() const noexcept { return data_; }

    double operator[](std::int64_t flat) const { return data_[static_cast<std::size_t>(flat)]; }
    double& operator[](std::int64_t flat) { return data_[static_cast<std::size_t>(flat)]; }

    // Multi-index access (0-based), mostly for tests and small cases.
    double at(std::span<const std::int64_t> index) const;
    double& at(std::span<const std::int64_t> index);

private:
    Shape dims_;
    std::vector<double> data_;
};

// Mode-n unfolding: rows are the mode-n fibers' extent, columns enumerate the
// remaining indices with the lower modes varying fastest (Kolda-Bader order).
// Modes are 0-based throughout.
Matrix unfold(const DenseTensor& t, int mode);

// Inverse of unfold: rebuilds the tensor of shape `dims` from its mode-n
// unfolding. fold(unfold(t, n), n, t.dims()) == t exactly.
DenseTensor fold(const Matrix& m, int mode, const Shape& dims);

// n-mode product t x_n u: every mode-n fiber is multiplied by u.
// Requires u.cols() == t.dims()[mode]; the result replaces that extent by
// u.rows().
DenseTensor mode_n_product(const DenseTensor& t, const Matrix& u, int mode);

double frobenius_norm(const DenseTensor& t);
double squared_norm(const DenseTensor& t);
double inner_product(const DenseTensor& a, const DenseTensor& b);

// Per-mode numerical rank of the unfoldings. A singular value counts when it
// exceeds max(rows, cols) * machine epsilon * sigma_max.
std::vector<std::int64_t> multilinear_rank(const DenseTensor& t);

} // namespace tensvd
