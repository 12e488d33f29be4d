#pragma once

#include <complex>
#include <numbers>

#include "mps/geometry.hpp"

namespace mps {

using cdouble = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
// Euler-Mascheroni constant, 20 significant digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

struct BesselPair {
    double j;
    double y;
};

/// Returns (J0(x), Y0(x)). Throws std::domain_error for x <= 0.
BesselPair bessel_j0_y0(double x);

/// Returns (J1(x), Y1(x)). Throws std::domain_error for x <= 0.
BesselPair bessel_j1_y1(double x);

/// J0 alone, defined on x >= 0 (J0(0) = 1).
double bessel_j0(double x);

/// H0^(1)(x) = J0(x) + i Y0(x) for real x > 0.
cdouble hankel1_0(double x);

/// H1^(1)(x) = J1(x) + i Y1(x) for real x > 0.
cdouble hankel1_1(double x);

/// Square root of an energy, normalized so that Im(value) >= 0.
/// For E > 0 this is |k| = sqrt(E) > 0.
class Wavenumber {
public:
    static Wavenumber from_energy(cdouble energy);
    static Wavenumber from_modulus(double k);

    cdouble value() const noexcept { return value_; }
    cdouble energy() const noexcept { return value_ * value_; }
    bool is_real_positive() const noexcept { return value_.imag() == 0.0 && value_.real() > 0.0; }

    /// |k| for a real positive wavenumber; throws InvalidInput otherwise.
    double modulus() const;

private:
    explicit Wavenumber(cdouble v) : value_(v) {}
    cdouble value_;
};

/// Outgoing free-space Green function G+(x, E) of Delta + E in dimension d.
/// d = 1 and d = 3 accept complex k; d = 2 requires real k > 0.
/// Throws InvalidInput for x = 0, k = 0 or d outside {1, 2, 3}.
cdouble green_plus(int d, const Point& x, Wavenumber k);

/// G+ as a function of r = |x| > 0.
cdouble green_plus_radial(int d, double r, Wavenumber k);

/// dG+/dr at r = |x| > 0; grad G+(x) = dG+/dr * x / |x|.
cdouble green_plus_radial_derivative(int d, double r, Wavenumber k);

/// Constant term of G+ as |x| -> 0 after removing the singular part
/// (nothing for d = 1, ln|x|/(2 pi) for d = 2, -1/(4 pi |x|) for d = 3).
cdouble green_plus_regular_part(int d, Wavenumber k);

namespace detail {

// Switch points between the evaluation regimes of the order 0/1 Bessel functions.
inline constexpr double kSeriesLimit = 8.0;
inline constexpr double kRecurrenceLimit = 25.0;

struct BesselOrders01 {
    double j0, y0, j1, y1;
};

// Ascending power series with the harmonic-sum companion for Y.
BesselOrders01 bessel01_series(double x);
// Miller backward recurrence with Neumann series for Y.
BesselOrders01 bessel01_recurrence(double x);
// Hankel asymptotic expansion.
BesselOrders01 bessel01_asymptotic(double x);

}  // namespace detail

}  // namespace mps
