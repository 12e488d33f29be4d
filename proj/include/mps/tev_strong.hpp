#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mps/kernels.hpp"
#include "mps/linalg.hpp"
#include "mps/quadrature.hpp"
#include "mps/s_operator.hpp"
#include "mps/scatterer.hpp"

namespace mps {

/// n_active x M matrix with entries exp(i |k| theta_m . y_j) w_m.
/// A density u with moment_matrix * u = 0 annihilates every induced charge,
/// which makes it a fixed point of the discrete S.
ComplexMatrix moment_matrix(const MultipointScatterer& s, double energy, const QuadratureRule& rule);

/// phi and psi (with gradients) for the density u at the given points, where
///   phi(x) = sum_m w_m u_m exp(i|k| theta_m . x),
///   psi(x) = sum_m w_m u_m psi+(x, |k| theta_m).
std::vector<kernels::FieldSample> density_fields(const MultipointScatterer& s, double energy,
                                                 const QuadratureRule& rule, const ComplexVector& u,
                                                 std::span<const Point> points);

struct TransparencyDefect {
    // max over points of |psi(x) - phi(x)|
    double field_defect = 0.0;
    // max_j |Q_j|, Q_j = sum_m w_m q_j(|k| theta_m) u_m
    double max_charge = 0.0;
};

/// Compares the superposition psi of scattering eigenfunctions weighted by u with
/// the Herglotz field phi of the same density at the given points.
TransparencyDefect transparency_check(const MultipointScatterer& s, double energy, const QuadratureRule& rule,
                                      const ComplexVector& u, std::span<const Point> points);

/// Seeded points in sample_region(s), away from the active sites.
std::vector<Point> transparency_sample_points(const MultipointScatterer& s, std::size_t count, std::uint64_t seed);

struct StrongTevOptions {
    double tol = kDefaultRankTolerance;
    std::uint64_t seed = 42;
    std::size_t sample_count = 20;
};

struct StrongTevReport {
    double energy = 0.0;
    std::size_t nodes = 0;
    std::size_t moment_rank = 0;
    RealVector moment_singular_values;
    // Orthonormal fixed points of S, one per column (M x (M - moment_rank)).
    ComplexMatrix eigenfunctions;
    // ||S u - u||_2 / ||u||_2 per eigenfunction
    std::vector<double> fixed_point_residuals;
    // max_j |Q_j| / ||u||_1 per eigenfunction
    std::vector<double> charge_residuals;
    // max_x |psi(x) - phi(x)| / ||u||_1 per eigenfunction
    std::vector<double> transparency_residuals;
    std::vector<Point> sample_points;
    std::uint64_t seed = 0;
    DefectRank defect;
};

/// Fixed points of the discretized scattering operator at E > 0 from the null
/// space of the moment matrix, with fixed-point and transparency residuals.
/// Throws Resonance when A(sqrt(E)) is singular.
StrongTevReport strong_eigenfunctions(const MultipointScatterer& s, double energy, const QuadratureRule& rule,
                                      const StrongTevOptions& options = {});

/// Closed-form fixed point for one active site in d = 1:
/// (u-, u+) = (exp(i|k|y), -exp(-i|k|y)) / sqrt(2).
struct D1Eigenvector {
    cdouble u_minus;
    cdouble u_plus;

    /// In the node order of build_rule(1, ...): (+1, -1) -> (u+, u-).
    ComplexVector in_rule_order() const;
};

/// Throws InvalidInput unless d = 1 with exactly one site (which may be inert).
D1Eigenvector d1_single_point_eigenvector(const MultipointScatterer& s, double energy);

double l1_norm(const ComplexVector& v);

}  // namespace mps
