#pragma once

#include <vector>

#include "tensvd/tensor.hpp"

namespace tensvd {

// How to obtain the left singular vectors of an unfolding.
//   Gram:   eigendecomposition of m * m^T. Cheap when rows << cols, at the
//           price of squaring the condition number.
//   Direct: thin SVD of m itself.
enum class SvdRoute { Gram, Direct };

// Leading left singular vectors of some matrix m, plus the squared singular
// values (= eigenvalues of m * m^T), sorted descending.
struct SpectralResult {
    Matrix vectors;             // rows x k, orthonormal columns
    std::vector<double> values; // sigma_i^2, descending, clamped to >= 0
};

// m * m^T, exactly symmetric by construction.
Matrix gram_matrix(const Matrix& m);

// The k leading left singular vectors of m. Columns are sign-fixed so that
// each column's largest-magnitude entry is positive, making the result
// deterministic up to degenerate (equal-singular-value) subspaces.
SpectralResult leading_left_singular_vectors(const Matrix& m, int k,
                                             SvdRoute route = SvdRoute::Gram);

} // namespace tensvd
