#pragma once

#include <cstddef>
#include <vector>

#include "mps/linalg.hpp"
#include "mps/quadrature.hpp"
#include "mps/scatterer.hpp"

namespace mps {

/// Quadrature discretization of the fixed-energy scattering operator:
///   S(m, m') = delta_{mm'} - i pi |k|^{d-2} f(|k| theta_m', |k| theta_m) w_m'.
/// Row index is the output direction, column index the integration variable.
class SMatrix {
public:
    SMatrix(QuadratureRule rule, double energy, ComplexMatrix entries);

    const QuadratureRule& rule() const noexcept { return rule_; }
    double energy() const noexcept { return energy_; }
    const ComplexMatrix& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return rule_.size(); }

private:
    QuadratureRule rule_;
    double energy_;
    ComplexMatrix entries_;
};

/// Builds S through the factored amplitude
///   f(|k| theta', |k| theta) = (2 pi)^{-d} sum_j q_j(-|k| theta) exp(i |k| theta' . y_j),
/// so one factorization of A(|k|) serves every column.
/// Throws InvalidInput for E <= 0 or mismatched dimensions, Resonance at singular A.
SMatrix build_s_matrix(const MultipointScatterer& s, double energy, const QuadratureRule& rule);

/// S u.
ComplexVector apply(const SMatrix& s_matrix, const ComplexVector& u);

struct DefectRank {
    std::size_t rank = 0;
    RealVector singular_values;
};

/// Numerical rank and singular spectrum of S - I.
DefectRank defect_rank(const SMatrix& s_matrix, double tol = kDefaultRankTolerance);

/// |lambda| for every eigenvalue of S, sorted ascending. Diagnostic only.
std::vector<double> eigenvalue_moduli(const SMatrix& s_matrix);

}  // namespace mps
