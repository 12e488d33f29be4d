#include "mps/special_functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "mps/errors.hpp"

namespace mps {

namespace {

constexpr cdouble kI{0.0, 1.0};

void require_positive_argument(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("Bessel Y and Hankel functions require x > 0");
    }
}

}  // namespace

namespace detail {

BesselOrders01 bessel01_series(double x) {
    const double t = -0.25 * x * x;
    double term0 = 1.0;      // (-x^2/4)^m / (m!)^2
    double term1 = 0.5 * x;  // (x/2) (-x^2/4)^m / (m! (m+1)!)
    double j0 = term0;
    double j1 = term1;
    double harmonic = 0.0;   // H_m
    double y0_tail = 0.0;    // sum_{m>=1} H_m term0_m
    double y1_tail = term1;  // sum_{m>=0} (H_m + H_{m+1}) term1_m, starts at H_0 + H_1 = 1
    for (int m = 1; m < 80; ++m) {
        term0 *= t / (double(m) * m);
        term1 *= t / (double(m) * (m + 1));
        harmonic += 1.0 / m;
        const double harmonic_next = harmonic + 1.0 / (m + 1);
        j0 += term0;
        j1 += term1;
        y0_tail += harmonic * term0;
        y1_tail += (harmonic + harmonic_next) * term1;
        if (std::abs(term0) * harmonic_next < 1e-18 && std::abs(term1) * harmonic_next < 1e-18 * std::abs(0.5 * x)) {
            break;
        }
    }
    const double log_part = std::log(0.5 * x) + kEulerGamma;
    const double y0 = (2.0 / kPi) * (log_part * j0 - y0_tail);
    const double y1 = (2.0 / kPi) * log_part * j1 - 2.0 / (kPi * x) - y1_tail / kPi;
    return {j0, y0, j1, y1};
}

BesselOrders01 bessel01_recurrence(double x) {
    constexpr int kMaxOrder = 126;
    std::array<double, kMaxOrder + 2> j{};
    int top = 2 * static_cast<int>((x + 50.0) / 2.0) + 2;
    if (top > kMaxOrder) {
        top = kMaxOrder;
    }
    j[top + 1] = 0.0;
    j[top] = 1e-30;
    for (int n = top; n >= 1; --n) {
        j[n - 1] = (2.0 * n / x) * j[n] - j[n + 1];
        if (std::abs(j[n - 1]) > 1e250) {
            for (int m = n - 1; m <= top + 1; ++m) {
                j[m] *= 1e-250;
            }
        }
    }
    double normalization = j[0];
    double neumann0 = 0.0;
    double neumann1 = 0.0;
    for (int k = 1; 2 * k <= top; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        normalization += 2.0 * j[2 * k];
        neumann0 += sign * j[2 * k] / k;
        neumann1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k;
    }
    const double j0 = j[0] / normalization;
    const double j1 = j[1] / normalization;
    const double log_part = std::log(0.5 * x) + kEulerGamma;
    const double y0 = (2.0 / kPi) * (log_part * j0 - 2.0 * neumann0 / normalization);
    const double y1 = (2.0 / kPi) * (-j0 / x + log_part * j1 + neumann1 / normalization);
    return {j0, y0, j1, y1};
}

BesselOrders01 bessel01_asymptotic(double x) {
    // P and Q amplitude series of the Hankel expansion for orders 0 and 1.
    auto amplitudes = [x](double mu, double& p, double& q) {
        p = 1.0;
        q = 0.0;
        double a = 1.0;
        double previous = 1.0;
        for (int k = 1; k < 200; ++k) {
            const double odd = 2.0 * k - 1.0;
            a *= (mu - odd * odd) / (k * 8.0 * x);
            const double magnitude = std::abs(a);
            if (magnitude > previous) {
                break;  // asymptotic series started to diverge
            }
            // term k contributes (-1)^{floor(k/2)} a_k to P (k even) or Q (k odd)
            const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
            if (k % 2 == 0) {
                p += sign * a;
            } else {
                q += sign * a;
            }
            if (magnitude < 1e-17) {
                break;
            }
            previous = magnitude;
        }
    };
    double p0, q0, p1, q1;
    amplitudes(0.0, p0, q0);
    amplitudes(4.0, p1, q1);
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double r = std::numbers::sqrt2 / 2.0;
    // chi0 = x - pi/4, chi1 = x - 3pi/4
    const double cos0 = r * (c + s);
    const double sin0 = r * (s - c);
    const double cos1 = r * (s - c);
    const double sin1 = -r * (s + c);
    const double scale = std::sqrt(2.0 / (kPi * x));
    return {scale * (p0 * cos0 - q0 * sin0), scale * (p0 * sin0 + q0 * cos0), scale * (p1 * cos1 - q1 * sin1),
            scale * (p1 * sin1 + q1 * cos1)};
}

}  // namespace detail

namespace {

detail::BesselOrders01 bessel01(double x) {
    if (x <= detail::kSeriesLimit) {
        return detail::bessel01_series(x);
    }
    if (x <= detail::kRecurrenceLimit) {
        return detail::bessel01_recurrence(x);
    }
    return detail::bessel01_asymptotic(x);
}

}  // namespace

BesselPair bessel_j0_y0(double x) {
    require_positive_argument(x);
    const auto b = bessel01(x);
    return {b.j0, b.y0};
}

BesselPair bessel_j1_y1(double x) {
    require_positive_argument(x);
    const auto b = bessel01(x);
    return {b.j1, b.y1};
}

double bessel_j0(double x) {
    if (x < 0.0) {
        x = -x;
    }
    if (x == 0.0) {
        return 1.0;
    }
    return bessel01(x).j0;
}

cdouble hankel1_0(double x) {
    const auto b = bessel_j0_y0(x);
    return {b.j, b.y};
}

cdouble hankel1_1(double x) {
    const auto b = bessel_j1_y1(x);
    return {b.j, b.y};
}

Wavenumber Wavenumber::from_energy(cdouble energy) {
    cdouble k = std::sqrt(energy);
    if (k.imag() < 0.0) {
        k = -k;
    }
    return Wavenumber(k);
}

Wavenumber Wavenumber::from_modulus(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw InvalidInput("wavenumber modulus must be a finite positive number");
    }
    return Wavenumber(cdouble(k, 0.0));
}

double Wavenumber::modulus() const {
    if (!is_real_positive()) {
        throw InvalidInput("a real positive wavenumber is required here");
    }
    return value_.real();
}

namespace {

void check_green_arguments(int d, double r, Wavenumber k) {
    if (!is_valid_dimension(d)) {
        throw InvalidInput("dimension must be 1, 2 or 3");
    }
    if (!(r > 0.0)) {
        throw InvalidInput("Green function is singular at x = 0");
    }
    if (k.value() == 0.0) {
        throw InvalidInput("Green function requires k != 0");
    }
    if (d == 2 && !k.is_real_positive()) {
        throw InvalidInput("the two-dimensional Green function is implemented for real k > 0 only");
    }
}

}  // namespace

cdouble green_plus_radial(int d, double r, Wavenumber k) {
    check_green_arguments(d, r, k);
    const cdouble kv = k.value();
    switch (d) {
        case 1:
            return std::exp(kI * kv * r) / (2.0 * kI * kv);
        case 2:
            return -0.25 * kI * hankel1_0(kv.real() * r);
        default:
            return -std::exp(kI * kv * r) / (4.0 * kPi * r);
    }
}

cdouble green_plus(int d, const Point& x, Wavenumber k) { return green_plus_radial(d, norm(x), k); }

cdouble green_plus_radial_derivative(int d, double r, Wavenumber k) {
    check_green_arguments(d, r, k);
    const cdouble kv = k.value();
    switch (d) {
        case 1:
            return 0.5 * std::exp(kI * kv * r);
        case 2:
            // d/dz H0(z) = -H1(z)
            return 0.25 * kI * kv.real() * hankel1_1(kv.real() * r);
        default:
            return -std::exp(kI * kv * r) * (kI * kv * r - 1.0) / (4.0 * kPi * r * r);
    }
}

cdouble green_plus_regular_part(int d, Wavenumber k) {
    if (!is_valid_dimension(d)) {
        throw InvalidInput("dimension must be 1, 2 or 3");
    }
    if (k.value() == 0.0) {
        throw InvalidInput("Green function requires k != 0");
    }
    const cdouble kv = k.value();
    switch (d) {
        case 1:
            return 1.0 / (2.0 * kI * kv);
        case 2:
            return (std::log(k.modulus()) - std::numbers::ln2 + kEulerGamma - 0.5 * kPi * kI) / (2.0 * kPi);
        default:
            return -kI * kv / (4.0 * kPi);
    }
}

}  // namespace mps
