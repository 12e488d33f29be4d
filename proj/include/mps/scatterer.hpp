#pragma once

#include <cstddef>
#include <vector>

#include "mps/geometry.hpp"
#include "mps/linalg.hpp"
#include "mps/special_functions.hpp"

namespace mps {

// Minimum distance between two scatterer positions.
inline constexpr double kMinSiteSeparation = 1e-12;
// Charge systems with a larger condition estimate are reported as resonant.
inline constexpr double kResonanceCondition = 1e12;

/// Strength parameter alpha of a point scatterer. The infinite value
/// describes an inert site (zero coupling).
class Strength {
public:
    static Strength finite(double alpha);
    static Strength infinite() { return Strength(); }

    bool is_inert() const noexcept { return inert_; }
    /// Throws InvalidInput for an inert site.
    double alpha() const;

private:
    Strength() = default;
    double alpha_ = 0.0;
    bool inert_ = true;
};

struct Site {
    Point position{};
    Strength strength = Strength::infinite();
};

/// Point scatterers at distinct positions in R^d, d in {1, 2, 3}. Immutable.
class MultipointScatterer {
public:
    /// Throws InvalidInput for a bad dimension, no sites, non-zero coordinates
    /// beyond d, non-finite values or two positions closer than kMinSiteSeparation.
    MultipointScatterer(int dimension, std::vector<Site> sites);

    int dimension() const noexcept { return dimension_; }
    const std::vector<Site>& sites() const noexcept { return sites_; }
    /// Indices of sites with finite alpha, in site order.
    const std::vector<std::size_t>& active_indices() const noexcept { return active_; }
    std::size_t active_count() const noexcept { return active_.size(); }
    const Point& active_position(std::size_t a) const { return sites_[active_[a]].position; }
    double active_alpha(std::size_t a) const { return sites_[active_[a]].strength.alpha(); }
    std::vector<Point> active_positions() const;

    /// Same scatterer with site j removed.
    MultipointScatterer without_site(std::size_t j) const;

private:
    int dimension_;
    std::vector<Site> sites_;
    std::vector<std::size_t> active_;
};

/// The symmetric n_active x n_active matrix A(|k|) of the charge system.
ComplexMatrix assemble_matrix(const MultipointScatterer& s, double k_modulus);

/// Right-hand side b_j(k) = -exp(i k . y_j) over active sites.
ComplexVector charge_rhs(const MultipointScatterer& s, const Point& wavevector);

struct ChargeSolution {
    Point k_direction{};
    double k_modulus = 0.0;
    // q_j(k) over active sites, in active order.
    ComplexVector charges;
    double condition_estimate = 1.0;
};

/// Solves A(|k|) q = b(k) for k = k_modulus * k_direction.
/// Throws Resonance when A is singular or its condition estimate exceeds kResonanceCondition.
ChargeSolution solve_charges(const MultipointScatterer& s, const Point& k_direction, double k_modulus);

/// Charges for many wavevectors of the same modulus with a single factorization.
/// Column m holds q(wavevectors[m]).
ComplexMatrix solve_charge_table(const MultipointScatterer& s, double k_modulus, const std::vector<Point>& wavevectors);

/// f(k, l) = (2 pi)^{-d} sum_j q_j(k) exp(-i l . y_j). Requires |k| = |l| > 0.
cdouble amplitude(const MultipointScatterer& s, const Point& k, const Point& l);

/// The same amplitude through reciprocity: (2 pi)^{-d} sum_j q_j(-l) exp(i k . y_j).
cdouble amplitude_reciprocal(const MultipointScatterer& s, const Point& k, const Point& l);

/// c(d, |k|) = -pi i (-2 pi i)^{(d-1)/2} |k|^{(d-3)/2}, sqrt(-2 pi i) = sqrt(2 pi) exp(-i pi/4).
cdouble far_field_constant(int d, double k_modulus);

/// f+(k, l) = c(d, |k|) f(k, l).
cdouble far_field(const MultipointScatterer& s, const Point& k, const Point& l);

/// psi+(x, k) = exp(i k . x) + sum_j q_j(k) G+(x - y_j, |k|^2). x must not be an active site.
cdouble total_field(const MultipointScatterer& s, const Point& x, const Point& k);

struct LocalExpansion {
    std::size_t site = 0;
    // Coefficient of the singular part (ln|x-y| for d=2, 1/|x-y| for d=3, derivative jump for d=1).
    cdouble psi_minus1;
    // Constant part at y_j (psi(y_j) for d=1).
    cdouble psi_0;
    // |boundary condition left side - right side|
    double residual = 0.0;
    // residual / max(|psi_minus1|, |psi_0|, 1)
    double relative_residual = 0.0;
};

/// Local coefficients of psi+(., k) at active site j (index into sites()) and the
/// residual of the point boundary condition there.
LocalExpansion local_coefficients(const MultipointScatterer& s, const Point& k, std::size_t j);

}  // namespace mps
