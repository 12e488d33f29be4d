#include "mps/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mps/errors.hpp"

namespace mps {

double infinity_norm(const ComplexMatrix& a) {
    if (a.size() == 0) {
        return 0.0;
    }
    return a.cwiseAbs().rowwise().sum().maxCoeff();
}

SolveResult solve(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols()) {
        throw InvalidInput("solve: matrix must be square, got " + std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()));
    }
    if (b.rows() != a.rows()) {
        throw InvalidInput("solve: right-hand side has " + std::to_string(b.rows()) + " rows, expected " +
                           std::to_string(a.rows()));
    }
    if (!a.allFinite() || !b.allFinite()) {
        throw InvalidInput("solve: non-finite entries");
    }
    if (a.rows() == 0) {
        return {ComplexMatrix(0, b.cols()), 1.0};
    }

    const double norm_a = infinity_norm(a);
    const Eigen::PartialPivLU<ComplexMatrix> lu(a);
    const auto& factors = lu.matrixLU();
    double smallest_pivot = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < factors.rows(); ++i) {
        smallest_pivot = std::min(smallest_pivot, std::abs(factors(i, i)));
    }
    if (norm_a == 0.0 || smallest_pivot < kSingularPivotRatio * norm_a) {
        throw SingularMatrix("solve: pivot magnitude " + std::to_string(smallest_pivot) +
                                 " below threshold relative to ||A||_inf = " + std::to_string(norm_a),
                             smallest_pivot);
    }
    const double rcond = lu.rcond();
    return {lu.solve(b), rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity()};
}

RealVector singular_values(const ComplexMatrix& a) {
    if (a.size() == 0) {
        return RealVector(0);
    }
    Eigen::BDCSVD<ComplexMatrix> svd(a);
    return svd.singularValues();
}

NullSpaceResult null_space(const ComplexMatrix& a, double tol) {
    if (!(tol > 0.0 && tol < 1.0)) {
        throw InvalidInput("null_space: tolerance must lie in (0, 1)");
    }
    if (a.size() == 0) {
        throw InvalidInput("null_space: empty matrix");
    }
    if (!a.allFinite()) {
        throw InvalidInput("null_space: non-finite entries");
    }
    Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
    NullSpaceResult result;
    result.singular_values = svd.singularValues();
    const double sigma_max = result.singular_values.size() > 0 ? result.singular_values(0) : 0.0;
    if (sigma_max > 0.0) {
        for (Eigen::Index i = 0; i < result.singular_values.size(); ++i) {
            if (result.singular_values(i) > tol * sigma_max) {
                ++result.rank;
            }
        }
    }
    const Eigen::Index rank = static_cast<Eigen::Index>(result.rank);
    result.basis = svd.matrixV().rightCols(a.cols() - rank);
    return result;
}

}  // namespace mps
