#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "mps/errors.hpp"
#include "mps/special_functions.hpp"

using namespace mps;

namespace {

constexpr cdouble kI{0.0, 1.0};

double scaled_error(double value, double reference) {
    return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

}  // namespace

TEST_CASE("Bessel functions of order 0 and 1 agree with Boost.Math") {
    double worst = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double x = 1e-6 * std::pow(1e9, i / 4000.0);
        const auto p0 = bessel_j0_y0(x);
        const auto p1 = bessel_j1_y1(x);
        worst = std::max({worst, scaled_error(p0.j, boost::math::cyl_bessel_j(0, x)),
                          scaled_error(p0.y, boost::math::cyl_neumann(0, x)),
                          scaled_error(p1.j, boost::math::cyl_bessel_j(1, x)),
                          scaled_error(p1.y, boost::math::cyl_neumann(1, x))});
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("evaluation regimes agree where they meet") {
    for (double x : {detail::kSeriesLimit, detail::kRecurrenceLimit}) {
        const auto a = x == detail::kSeriesLimit ? detail::bessel01_series(x) : detail::bessel01_recurrence(x);
        const auto b = x == detail::kSeriesLimit ? detail::bessel01_recurrence(x) : detail::bessel01_asymptotic(x);
        CHECK(std::abs(a.j0 - b.j0) <= 1e-13);
        CHECK(std::abs(a.y0 - b.y0) <= 1e-13);
        CHECK(std::abs(a.j1 - b.j1) <= 1e-13);
        CHECK(std::abs(a.y1 - b.y1) <= 1e-13);
    }
}

TEST_CASE("J0 is even and equals 1 at the origin") {
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(bessel_j0(-3.7) == bessel_j0(3.7));
}

TEST_CASE("Y and Hankel functions reject x <= 0") {
    CHECK_THROWS_AS(bessel_j0_y0(0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j1_y1(-1.0), std::domain_error);
    CHECK_THROWS_AS(hankel1_0(0.0), std::domain_error);
    CHECK_THROWS_AS(hankel1_1(std::nan("")), std::domain_error);
}

TEST_CASE("Hankel functions are J + iY") {
    for (double x : {0.3, 5.0, 12.0, 40.0}) {
        const auto p0 = bessel_j0_y0(x);
        const auto p1 = bessel_j1_y1(x);
        CHECK(std::abs(hankel1_0(x) - cdouble(p0.j, p0.y)) == 0.0);
        CHECK(std::abs(hankel1_1(x) - cdouble(p1.j, p1.y)) == 0.0);
    }
}

TEST_CASE("wavenumber uses the branch with Im k >= 0") {
    CHECK(std::abs(Wavenumber::from_energy(4.0).value() - 2.0) < 1e-15);
    CHECK(std::abs(Wavenumber::from_energy(-4.0).value() - 2.0 * kI) < 1e-15);
    CHECK(std::abs(Wavenumber::from_energy(cdouble(-1.0, -0.0)).value() - kI) < 1e-15);
    const cdouble expected = std::exp(kI * (std::numbers::pi / 4.0));
    CHECK(std::abs(Wavenumber::from_energy(kI).value() - expected) < 1e-15);
    CHECK(Wavenumber::from_energy(cdouble(0.5, -2.0)).value().imag() >= 0.0);
    CHECK(Wavenumber::from_energy(2.0).is_real_positive());
    CHECK_FALSE(Wavenumber::from_energy(kI).is_real_positive());
    CHECK_THROWS_AS(Wavenumber::from_energy(kI).modulus(), InvalidInput);
    CHECK_THROWS_AS(Wavenumber::from_modulus(-1.0), InvalidInput);
}

TEST_CASE("Green functions match their closed forms") {
    const auto k = Wavenumber::from_modulus(1.7);
    const Point x{0.3, -0.4, 1.2};
    const double r = norm(x);
    CHECK(std::abs(green_plus(1, Point{-0.8, 0, 0}, k) - std::exp(kI * 1.7 * 0.8) / (2.0 * kI * 1.7)) < 1e-15);
    CHECK(std::abs(green_plus(3, x, k) + std::exp(kI * 1.7 * r) / (4.0 * std::numbers::pi * r)) < 1e-15);
    const Point x2{0.3, -0.4, 0.0};
    const double kr = 1.7 * 0.5;
    const cdouble h0(boost::math::cyl_bessel_j(0, kr), boost::math::cyl_neumann(0, kr));
    CHECK(std::abs(green_plus(2, x2, k) + 0.25 * kI * h0) < 1e-14);
}

TEST_CASE("Green functions solve the Helmholtz equation away from the origin") {
    // Second differences in every coordinate of the full d-dimensional function.
    const double h = 1e-3;
    for (int d = 1; d <= 3; ++d) {
        const auto k = Wavenumber::from_modulus(1.3);
        const Point x{0.7, d > 1 ? -0.5 : 0.0, d > 2 ? 0.4 : 0.0};
        const cdouble g = green_plus(d, x, k);
        cdouble laplacian = 0.0;
        for (int c = 0; c < d; ++c) {
            Point plus = x;
            Point minus = x;
            plus[c] += h;
            minus[c] -= h;
            laplacian += (green_plus(d, plus, k) - 2.0 * g + green_plus(d, minus, k)) / (h * h);
        }
        CHECK(std::abs(laplacian + 1.69 * g) / std::abs(g) < 1e-5);
    }
}

TEST_CASE("complex wavenumbers give decaying d = 1 and d = 3 Green functions") {
    const auto k = Wavenumber::from_energy(-1.0);
    CHECK(std::abs(green_plus(3, Point{2.0, 0, 0}, k) + std::exp(-2.0) / (8.0 * std::numbers::pi)) < 1e-16);
    CHECK(std::abs(green_plus(1, Point{3.0, 0, 0}, k) - std::exp(-3.0) / (2.0 * kI * kI)) < 1e-16);
    CHECK_THROWS_AS(green_plus(2, Point{1.0, 0, 0}, k), InvalidInput);
}

TEST_CASE("Green function preconditions") {
    const auto k = Wavenumber::from_modulus(1.0);
    CHECK_THROWS_AS(green_plus(3, Point{}, k), InvalidInput);
    CHECK_THROWS_AS(green_plus(4, Point{1, 0, 0}, k), InvalidInput);
    CHECK_THROWS_AS(green_plus(3, Point{1, 0, 0}, Wavenumber::from_energy(0.0)), InvalidInput);
}

TEST_CASE("radial derivative agrees with a central difference") {
    const auto k = Wavenumber::from_modulus(2.1);
    for (int d = 1; d <= 3; ++d) {
        for (double r : {0.2, 1.0, 7.5, 30.0}) {
            const double h = 1e-5 * r;
            const cdouble fd = (green_plus_radial(d, r + h, k) - green_plus_radial(d, r - h, k)) / (2.0 * h);
            const cdouble exact = green_plus_radial_derivative(d, r, k);
            CHECK(std::abs(fd - exact) <= 1e-7 * std::abs(exact));
        }
    }
}

TEST_CASE("regular part is the limit of G minus its singular part") {
    const double kk = 1.4;
    const auto k = Wavenumber::from_modulus(kk);
    const double r = 1e-7;
    const cdouble d1 = green_plus_radial(1, r, k);
    const cdouble d3 = green_plus_radial(3, r, k) + 1.0 / (4.0 * std::numbers::pi * r);
    const cdouble d2 = green_plus_radial(2, r, k) - std::log(r) / (2.0 * std::numbers::pi);
    CHECK(std::abs(d1 - green_plus_regular_part(1, k)) < 1e-6);
    CHECK(std::abs(d3 - green_plus_regular_part(3, k)) < 1e-6);
    CHECK(std::abs(d2 - green_plus_regular_part(2, k)) < 1e-10);
    const cdouble expected2 =
        (std::log(kk) - std::numbers::ln2 + kEulerGamma - kI * (std::numbers::pi / 2.0)) / (2.0 * std::numbers::pi);
    CHECK(std::abs(green_plus_regular_part(2, k) - expected2) < 1e-15);
    CHECK(std::abs(green_plus_regular_part(3, k) + kI * kk / (4.0 * std::numbers::pi)) < 1e-16);
}
