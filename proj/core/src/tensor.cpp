#include "tensvd/tensor.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace tensvd {

namespace {

std::string shape_to_string(const Shape& dims) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) out << ",";
        out << dims[i];
    }
    out << ")";
    return out.str();
}

void check_mode(const DenseTensor& t, int mode) {
    if (mode < 0 || mode >= t.order())
        throw ShapeError("mode " + std::to_string(mode) + " out of range for order " +
                         std::to_string(t.order()) + " tensor");
}

// Extent products below and above `mode`; the flat column-major index
// decomposes as inner_idx + i_mode * inner + outer_idx * inner * I_mode.
struct ModeSplit {
    std::int64_t inner;
    std::int64_t extent;
    std::int64_t outer;
};

ModeSplit split_at(const Shape& dims, int mode) {
    ModeSplit s{1, dims[static_cast<std::size_t>(mode)], 1};
    for (int i = 0; i < mode; ++i) s.inner *= dims[static_cast<std::size_t>(i)];
    for (std::size_t i = static_cast<std::size_t>(mode) + 1; i < dims.size(); ++i)
        s.outer *= dims[i];
    return s;
}

} // namespace

std::int64_t element_count(const Shape& dims) {
    if (dims.empty()) throw ShapeError("tensor order must be at least 1");
    std::int64_t count = 1;
    for (std::int64_t d : dims) {
        if (d < 1) throw ShapeError("tensor extent must be positive, got " + std::to_string(d));
        count *= d;
    }
    return count;
}

DenseTensor::DenseTensor(Shape dims)
    : dims_(std::move(dims)), data_(static_cast<std::size_t>(element_count(dims_)), 0.0) {}

DenseTensor::DenseTensor(Shape dims, std::vector<double> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
    if (static_cast<std::int64_t>(data_.size()) != element_count(dims_))
        throw ShapeError("buffer length " + std::to_string(data_.size()) +
                         " does not match shape " + shape_to_string(dims_));
}

double DenseTensor::at(std::span<const std::int64_t> index) const {
    return const_cast<DenseTensor*>(this)->at(index);
}

double& DenseTensor::at(std::span<const std::int64_t> index) {
    if (static_cast<int>(index.size()) != order())
        throw ShapeError("index order does not match tensor order");
    std::int64_t flat = 0;
    std::int64_t stride = 1;
    for (std::size_t i = 0; i < index.size(); ++i) {
        if (index[i] < 0 || index[i] >= dims_[i]) throw ShapeError("index out of range");
        flat += index[i] * stride;
        stride *= dims_[i];
    }
    return data_[static_cast<std::size_t>(flat)];
}

Matrix unfold(const DenseTensor& t, int mode) {
    check_mode(t, mode);
    const auto [inner, extent, outer] = split_at(t.dims(), mode);
    Matrix m(extent, inner * outer);
    if (inner == 1) {
        // Mode 0 is already laid out as the unfolding.
        m = Eigen::Map<const Matrix>(t.data(), extent, outer);
        return m;
    }
    for (std::int64_t o = 0; o < outer; ++o) {
        m.middleCols(o * inner, inner) =
            Eigen::Map<const Matrix>(t.data() + o * inner * extent, inner, extent).transpose();
    }
    return m;
}

DenseTensor fold(const Matrix& m, int mode, const Shape& dims) {
    const std::int64_t count = element_count(dims);
    if (mode < 0 || mode >= static_cast<int>(dims.size()))
        throw ShapeError("mode " + std::to_string(mode) + " out of range for shape " +
                         shape_to_string(dims));
    const auto [inner, extent, outer] = split_at(dims, mode);
    if (m.rows() != extent || m.cols() != count / extent)
        throw ShapeError("matrix " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         " is not the mode-" + std::to_string(mode) + " unfolding of " +
                         shape_to_string(dims));
    DenseTensor t(dims);
    if (inner == 1) {
        Eigen::Map<Matrix>(t.data(), extent, outer) = m;
        return t;
    }
    for (std::int64_t o = 0; o < outer; ++o) {
        Eigen::Map<Matrix>(t.data() + o * inner * extent, inner, extent) =
            m.middleCols(o * inner, inner).transpose();
    }
    return t;
}

DenseTensor mode_n_product(const DenseTensor& t, const Matrix& u, int mode) {
    check_mode(t, mode);
    const auto [inner, extent, outer] = split_at(t.dims(), mode);
    if (u.cols() != extent)
        throw ShapeError("matrix has " + std::to_string(u.cols()) + " columns, mode-" +
                         std::to_string(mode) + " extent is " + std::to_string(extent));
    Shape out_dims = t.dims();
    out_dims[static_cast<std::size_t>(mode)] = u.rows();
    DenseTensor out(out_dims);
    const std::int64_t h = u.rows();
    if (inner == 1) {
        Eigen::Map<Matrix>(out.data(), h, outer) =
            u * Eigen::Map<const Matrix>(t.data(), extent, outer);
        return out;
    }
    // Each contiguous (inner x extent) slab contracts against u^T.
    for (std::int64_t o = 0; o < outer; ++o) {
        Eigen::Map<Matrix>(out.data() + o * inner * h, inner, h) =
            Eigen::Map<const Matrix>(t.data() + o * inner * extent, inner, extent) *
            u.transpose();
    }
    return out;
}

double frobenius_norm(const DenseTensor& t) {
    return Eigen::Map<const Eigen::VectorXd>(t.data(), t.size()).norm();
}

double squared_norm(const DenseTensor& t) {
    return Eigen::Map<const Eigen::VectorXd>(t.data(), t.size()).squaredNorm();
}

double inner_product(const DenseTensor& a, const DenseTensor& b) {
    if (a.dims() != b.dims())
        throw ShapeError("inner product requires identical shapes, got " +
                         shape_to_string(a.dims()) + " and " + shape_to_string(b.dims()));
    return Eigen::Map<const Eigen::VectorXd>(a.data(), a.size())
        .dot(Eigen::Map<const Eigen::VectorXd>(b.data(), b.size()));
}

std::vector<std::int64_t> multilinear_rank(const DenseTensor& t) {
    std::vector<std::int64_t> ranks;
    ranks.reserve(static_cast<std::size_t>(t.order()));
    for (int n = 0; n < t.order(); ++n) {
        const Matrix m = unfold(t, n);
        const Eigen::VectorXd sv = Eigen::BDCSVD<Matrix>(m).singularValues();
        const double tol = static_cast<double>(std::max(m.rows(), m.cols())) *
                           std::numeric_limits<double>::epsilon() *
                           (sv.size() > 0 ? sv(0) : 0.0);
        std::int64_t r = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > tol) ++r;
        ranks.push_back(r);
    }
    return ranks;
}

} // namespace tensvd
