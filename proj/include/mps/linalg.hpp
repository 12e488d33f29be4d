#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace mps {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultRankTolerance = 1e-10;
// Pivots below this fraction of ||A||_inf are treated as zero.
inline constexpr double kSingularPivotRatio = 1e-14;

struct SolveResult {
    ComplexMatrix solution;
    // Estimate of the 1-norm condition number of A.
    double condition_estimate = 1.0;
};

/// Solves A X = B by LU with partial pivoting.
/// Throws InvalidInput on shape mismatch and SingularMatrix when a pivot
/// magnitude falls below kSingularPivotRatio * ||A||_inf.
SolveResult solve(const ComplexMatrix& a, const ComplexMatrix& b);

struct NullSpaceResult {
    std::size_t rank = 0;
    // Orthonormal null-space basis, one vector per column; cols() == A.cols() - rank.
    ComplexMatrix basis;
    // Non-increasing, min(rows, cols) entries.
    RealVector singular_values;
};

/// Numerical rank and null space of A from its SVD. Singular values above
/// tol * sigma_max count toward the rank.
NullSpaceResult null_space(const ComplexMatrix& a, double tol = kDefaultRankTolerance);

/// Singular values only, non-increasing.
RealVector singular_values(const ComplexMatrix& a);

double infinity_norm(const ComplexMatrix& a);

}  // namespace mps
