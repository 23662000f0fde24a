#pragma once

// Brute-force reference implementations used to check the library. They are
// written from the definitions (index enumeration, nested sums, dense SVD,
// subset enumeration) and deliberately share no code with the paths they
// verify.

#include <cstdint>
#include <random>
#include <vector>

#include "tensvd/tensor.hpp"

namespace oracles {

using tensvd::DenseTensor;
using tensvd::Matrix;
using tensvd::Shape;

// Uniform [0,1) tensor from a caller-owned generator.
DenseTensor random_tensor(const Shape& dims, std::mt19937_64& rng);

// Multi-index <-> flat column-major index.
std::vector<std::int64_t> decode_index(std::int64_t flat, const Shape& dims);
std::int64_t encode_index(const std::vector<std::int64_t>& index, const Shape& dims);

// Mode-n unfolding straight from the fiber definition: element (i_0..i_{N-1})
// lands at row i_mode, column sum_{k != mode} i_k * prod_{m<k, m != mode} I_m.
Matrix naive_unfold(const DenseTensor& t, int mode);

// y(..., h, ...) = sum_j u(h, j) * x(..., j, ...) by full enumeration.
DenseTensor naive_mode_product(const DenseTensor& t, const Matrix& u, int mode);

// xhat(i...) = sum_{a...} core(a...) * prod_n U_n(i_n, a_n). Exponential in
// the order; small tensors only.
DenseTensor naive_tucker_reconstruct(const std::vector<Matrix>& factors,
                                     const DenseTensor& core);

double naive_mse(const DenseTensor& x, const DenseTensor& xhat);

// Dense singular values via Jacobi SVD (a different algorithm from the
// Gram-eigendecomposition route under test).
Eigen::VectorXd dense_singular_values(const Matrix& m);

// sqrt(sum of sigma_i^2 for i >= k): the best rank-k approximation error.
double eckart_young_error(const Matrix& m, int k);

// Independent re-implementation of the greedy reshape rule (largest prime to
// the smallest bin, ties to the most recently updated bin) plus the order
// search, for cross-checking plans.
Shape greedy_plan_oracle(std::uint64_t element_count, int order);
Shape auto_plan_oracle(std::uint64_t element_count);

// Maximum selected energy over all k-subsets of `values`, by enumeration.
// Returns the best energy (long double summation in ascending position
// order).
long double best_k_subset_energy(const std::vector<double>& values, int k);

// Same summation routine applied to one explicit subset.
long double subset_energy(const std::vector<double>& values,
                          std::vector<std::uint64_t> positions);

} // namespace oracles
