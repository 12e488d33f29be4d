#include "mps/s_operator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "mps/errors.hpp"
#include "mps/kernels.hpp"

namespace mps {

SMatrix::SMatrix(QuadratureRule rule, double energy, ComplexMatrix entries)
    : rule_(std::move(rule)), energy_(energy), entries_(std::move(entries)) {
    const auto m = static_cast<Eigen::Index>(rule_.size());
    if (entries_.rows() != m || entries_.cols() != m) {
        throw InvalidInput("SMatrix: entries must be square with one row per quadrature node");
    }
}

SMatrix build_s_matrix(const MultipointScatterer& s, double energy, const QuadratureRule& rule) {
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw InvalidInput("the scattering operator is defined for real E > 0");
    }
    if (rule.dimension != s.dimension()) {
        throw InvalidInput("quadrature rule dimension does not match the scatterer");
    }
    const auto size = static_cast<Eigen::Index>(rule.size());
    if (s.active_count() == 0) {
        return SMatrix(rule, energy, ComplexMatrix::Identity(size, size));
    }
    const double k = std::sqrt(energy);
    const int d = s.dimension();

    std::vector<Point> outgoing_wavevectors;
    outgoing_wavevectors.reserve(rule.size());
    for (const auto& theta : rule.nodes) {
        outgoing_wavevectors.push_back(-k * theta);
    }
    const ComplexMatrix outgoing = solve_charge_table(s, k, outgoing_wavevectors);

    const auto sites = s.active_positions();
    ComplexMatrix phases;
    kernels::openmp::phase_matrix(sites, k, rule.nodes, {}, phases);

    const cdouble scale = cdouble(0.0, -kPi) * std::pow(k, d - 2) / std::pow(2.0 * kPi, d);
    ComplexMatrix entries;
    kernels::openmp::assemble_s_matrix(scale, outgoing, phases, rule.weights, entries);
    return SMatrix(rule, energy, std::move(entries));
}

ComplexVector apply(const SMatrix& s_matrix, const ComplexVector& u) {
    if (u.size() != static_cast<Eigen::Index>(s_matrix.size())) {
        throw InvalidInput("apply: vector length does not match the S-matrix");
    }
    return s_matrix.entries() * u;
}

DefectRank defect_rank(const SMatrix& s_matrix, double tol) {
    if (!(tol > 0.0 && tol < 1.0)) {
        throw InvalidInput("defect_rank: tolerance must lie in (0, 1)");
    }
    const auto size = static_cast<Eigen::Index>(s_matrix.size());
    const ComplexMatrix defect = s_matrix.entries() - ComplexMatrix::Identity(size, size);
    DefectRank result;
    result.singular_values = singular_values(defect);
    if (result.singular_values.size() > 0 && result.singular_values(0) > 0.0) {
        const double threshold = tol * result.singular_values(0);
        for (Eigen::Index i = 0; i < result.singular_values.size(); ++i) {
            if (result.singular_values(i) > threshold) {
                ++result.rank;
            }
        }
    }
    return result;
}

std::vector<double> eigenvalue_moduli(const SMatrix& s_matrix) {
    const Eigen::ComplexEigenSolver<ComplexMatrix> solver(s_matrix.entries(), false);
    std::vector<double> moduli;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        moduli.push_back(std::abs(solver.eigenvalues()(i)));
    }
    std::sort(moduli.begin(), moduli.end());
    return moduli;
}

}  // namespace mps
