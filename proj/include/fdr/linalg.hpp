#pragma once

#include <vector>

#include "fdr/matrix.hpp"
#include "fdr/model.hpp"

namespace fdr {

struct EigResult {
    std::vector<double> values;  // ascending
    CMat vectors;                // column k pairs with values[k]
};

// Cyclic Jacobi. Throws std::invalid_argument if A is not Hermitian.
EigResult hermitian_eig(const CMat& A);

// Cholesky solve of A x = b for Hermitian positive definite A.
// Throws std::domain_error when A is not numerically positive definite.
CVec solve_hermitian_psd(const CMat& A, const CVec& b);

// True if the Hermitian matrix admits a Cholesky factorization.
bool is_positive_definite(const CMat& A);

// In-place real Cholesky solve of the n x n SPD system A x = b (row-major A).
// Returns false if A is not positive definite.
bool cholesky_solve_real(std::vector<double>& A, std::vector<double>& b, std::size_t n);

// Orthogonal projector removing the direction H_RR^H h_SR (M_T x M_T).
CMat projection_B(const ChannelRealization& ch);
// Orthogonal projector removing the direction H_RR h_RD^H (M_R x M_R).
CMat projection_D(const ChannelRealization& ch);

// Squared-norm threshold below which a nulling direction counts as absent.
inline constexpr double kDegenerateNorm2 = 1e-30;

}  // namespace fdr
