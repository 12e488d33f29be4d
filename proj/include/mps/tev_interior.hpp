#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mps/linalg.hpp"
#include "mps/quadrature.hpp"
#include "mps/sampling.hpp"
#include "mps/scatterer.hpp"
#include "mps/special_functions.hpp"

namespace mps {

using ExtendedPoint = std::array<long double, 3>;

enum class FamilyKind { plane_waves, harmonic_polynomials };

/// Finite family of linearly independent smooth solutions of -Delta phi = E phi.
///
/// Plane waves exp(i kappa theta_l . x), kappa = sqrt(E) with Im >= 0, for E != 0;
/// harmonic polynomials for E = 0 (d = 1: 1, x; d = 2: Re/Im (x + iy)^m;
/// d = 3: real and imaginary parts of the regular solid harmonics r^l P_l^m e^{i m phi}).
class FreeSolutionFamily {
public:
    static FreeSolutionFamily plane_waves(int d, cdouble energy, std::vector<Point> directions);
    static FreeSolutionFamily harmonic_polynomials(int d, std::size_t count);

    int dimension() const noexcept { return dimension_; }
    cdouble energy() const noexcept { return energy_; }
    cdouble kappa() const noexcept { return kappa_; }
    FamilyKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return size_; }
    /// Plane-wave directions (empty for harmonic polynomials).
    const std::vector<Point>& directions() const noexcept { return directions_; }

    cdouble evaluate(std::size_t l, const Point& x) const;
    /// Member l in extended precision, for finite-difference checks.
    std::complex<long double> evaluate_extended(std::size_t l, const ExtendedPoint& x) const;
    /// Analytic Laplacian of member l.
    cdouble laplacian(std::size_t l, const Point& x) const;
    /// d/dx of member l; d = 1 families only.
    cdouble derivative_1d(std::size_t l, double x) const;

    /// Matrix with entries member l at point p, rows = points.
    ComplexMatrix evaluate_matrix(std::span<const Point> points) const;

private:
    FreeSolutionFamily() = default;
    int dimension_ = 0;
    cdouble energy_;
    cdouble kappa_;
    FamilyKind kind_ = FamilyKind::plane_waves;
    std::size_t size_ = 0;
    std::vector<Point> directions_;
};

/// N plane waves with equidistributed directions: roots of unity for d = 2,
/// a Fibonacci lattice for d = 3, {+1, -1} for d = 1.
/// Throws InvalidInput for E = 0, N = 0 or N > 2 when d = 1.
FreeSolutionFamily plane_wave_family(cdouble energy, std::size_t count, int d);

/// plane_wave_family for E != 0, harmonic polynomials for E = 0.
FreeSolutionFamily free_solution_family(cdouble energy, std::size_t count, int d);

/// Phi(x) = sum_l z_l phi_l(x).
cdouble evaluate_combination(const FreeSolutionFamily& family, const ComplexVector& z, const Point& x);

struct InteriorBasis {
    FreeSolutionFamily family;
    Ball domain;
    // rank of the n_active x N matrix [phi_l(y_j)]
    std::size_t constraint_rank = 0;
    RealVector constraint_singular_values;
    // Orthonormal coefficient vectors z, one per column; Phi = sum_l z_l phi_l vanishes at every active site.
    ComplexMatrix coefficients;
};

/// Null space of [phi_l(y_j)]: combinations of the family vanishing at every
/// active site. Throws InvalidInput unless N > n_active.
InteriorBasis interior_eigenfunctions(const MultipointScatterer& s, const FreeSolutionFamily& family,
                                      double tol = kDefaultRankTolerance);

/// For d = 1 and one site: Phi(x) = sin(kappa (x - y_1)) written in the plane-wave
/// family {exp(i kappa x), exp(-i kappa x)} (or x - y_1 for E = 0).
InteriorBasis d1_single_point_interior(const MultipointScatterer& s, cdouble energy);

inline constexpr double kLemmaSiteTolerance = 1e-12;
inline constexpr double kLemmaAnalyticTolerance = 1e-12;
inline constexpr double kFdRatioLow = 3.2;
inline constexpr double kFdRatioHigh = 4.8;

/// Numerical check that a combination vanishing at the sites also solves the
/// point-scatterer equation. All residuals are divided by ||z||_1.
struct Lemma1Report {
    double max_site_value = 0.0;     // max_j |Phi(y_j)|
    double analytic_residual = 0.0;  // max_p |-Delta Phi - E Phi| / (max(1,|E|) max|phi_l|)
    double fd_step = 0.0;
    double fd_residual = 0.0;        // finite-difference residual at step h
    double fd_residual_half = 0.0;   // at h / 2
    double fd_ratio = 0.0;
    double fd_roundoff_floor = 0.0;  // rounding estimate for the stencil at step h
    bool fd_at_roundoff = false;     // residual at h / 2 within 10x of its rounding estimate
    // Local coefficients of Phi at each active site and the boundary-condition residual there.
    std::vector<LocalExpansion> local;
    std::vector<Point> sample_points;

    bool hypothesis_holds() const { return max_site_value <= kLemmaSiteTolerance; }
    bool helmholtz_holds() const {
        return analytic_residual <= kLemmaAnalyticTolerance &&
               (fd_at_roundoff || (fd_ratio >= kFdRatioLow && fd_ratio <= kFdRatioHigh));
    }
    bool boundary_conditions_hold() const;
    bool passed() const { return hypothesis_holds() && helmholtz_holds() && boundary_conditions_hold(); }
};

Lemma1Report lemma1_verify(const MultipointScatterer& s, const FreeSolutionFamily& family, const ComplexVector& z,
                           double h = 1e-3, std::size_t sample_count = 10, std::uint64_t seed = 42);

struct BoundaryMatch {
    double value_defect = 0.0;   // max |psi - phi| on the boundary
    double normal_defect = 0.0;  // max |d_nu psi - d_nu phi| on the boundary
};

/// Compares the scattering superposition psi and the Herglotz field phi of a
/// density u (and their normal derivatives) on the boundary of a ball.
BoundaryMatch boundary_match_check(const MultipointScatterer& s, const ComplexVector& u, double energy,
                                   const QuadratureRule& rule, const Ball& boundary, std::size_t samples = 32);

struct IndependenceCheck {
    std::size_t rank = 0;
    double condition = 0.0;  // sigma_max / sigma_min of the sampled family matrix
};

/// Linear independence of the family restricted to a ball, from the singular
/// values of its values at seeded sample points.
IndependenceCheck family_independence(const FreeSolutionFamily& family, const Ball& domain,
                                      std::size_t sample_count = 0, std::uint64_t seed = 42, double tol = 1e-14);

}  // namespace mps
