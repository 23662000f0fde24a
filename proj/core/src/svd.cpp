#include "tensvd/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tensvd {

namespace {

// Make each column's largest-magnitude entry positive (first such entry on
// exact ties) so repeated runs return identical factors.
void fix_signs(Matrix& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index at = 0;
        vectors.col(c).cwiseAbs().maxCoeff(&at);
        if (vectors(at, c) < 0.0) vectors.col(c) = -vectors.col(c);
    }
}

} // namespace

Matrix gram_matrix(const Matrix& m) {
    Matrix g = Matrix::Zero(m.rows(), m.rows());
    g.selfadjointView<Eigen::Lower>().rankUpdate(m);
    g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
    return g;
}

SpectralResult leading_left_singular_vectors(const Matrix& m, int k, SvdRoute route) {
    if (k < 1 || k > m.rows())
        throw ShapeError("k = " + std::to_string(k) + " out of range [1, " +
                         std::to_string(m.rows()) + "]");

    SpectralResult result;
    result.values.reserve(static_cast<std::size_t>(k));

    if (route == SvdRoute::Direct) {
        Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU);
        const Matrix& u = svd.matrixU(); // rows x min(rows, cols)
        if (u.cols() >= k) {
            result.vectors = u.leftCols(k);
        } else {
            // More vectors requested than the matrix is wide: pad with an
            // orthonormal completion. The extra directions carry zero
            // singular values.
            Eigen::HouseholderQR<Matrix> qr(u);
            Matrix full = qr.householderQ() * Matrix::Identity(m.rows(), k);
            full.leftCols(u.cols()) = u;
            result.vectors = full;
        }
        for (int i = 0; i < k; ++i) {
            const double sv = i < svd.singularValues().size() ? svd.singularValues()(i) : 0.0;
            result.values.push_back(sv * sv);
        }
        fix_signs(result.vectors);
        return result;
    }

    const Matrix g = gram_matrix(m);
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    if (es.info() != Eigen::Success)
        throw Error("symmetric eigendecomposition failed to converge");

    // Eigen returns eigenvalues ascending; take the top k in reverse.
    const Eigen::Index n = g.rows();
    result.vectors.resize(n, k);
    for (int i = 0; i < k; ++i) {
        const Eigen::Index src = n - 1 - i;
        result.vectors.col(i) = es.eigenvectors().col(src);
        result.values.push_back(std::max(es.eigenvalues()(src), 0.0));
    }
    fix_signs(result.vectors);
    return result;
}

} // namespace tensvd
