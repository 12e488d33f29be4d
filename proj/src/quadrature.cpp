#include "mps/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "mps/errors.hpp"

namespace mps {

double sphere_measure(int d) {
    switch (d) {
        case 1:
            return 2.0;
        case 2:
            return 2.0 * std::numbers::pi;
        case 3:
            return 4.0 * std::numbers::pi;
        default:
            throw InvalidInput("dimension must be 1, 2 or 3");
    }
}

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendre gauss_legendre(int n) {
    if (n < 1) {
        throw InvalidInput("Gauss-Legendre rule needs at least one node");
    }
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess for the i-th largest root.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre_with_derivative(n, x);
            const double step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        const double dp = legendre_with_derivative(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[n - 1 - i] = w;
        rule.weights[i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

QuadratureRule build_rule(int d, int resolution) {
    if (!is_valid_dimension(d)) {
        throw InvalidInput("quadrature dimension must be 1, 2 or 3, got " + std::to_string(d));
    }
    QuadratureRule rule;
    rule.dimension = d;
    if (d == 1) {
        rule.nodes = {Point{1.0, 0.0, 0.0}, Point{-1.0, 0.0, 0.0}};
        rule.weights = {1.0, 1.0};
        return rule;
    }
    if (resolution < 1) {
        throw InvalidInput("quadrature resolution must be positive");
    }
    const double two_pi = 2.0 * std::numbers::pi;
    if (d == 2) {
        rule.nodes.reserve(resolution);
        for (int m = 0; m < resolution; ++m) {
            const double angle = two_pi * m / resolution;
            rule.nodes.push_back(Point{std::cos(angle), std::sin(angle), 0.0});
        }
        rule.weights.assign(resolution, two_pi / resolution);
        return rule;
    }
    const auto polar = gauss_legendre(resolution);
    const int azimuths = 2 * resolution;
    rule.nodes.reserve(static_cast<std::size_t>(resolution) * azimuths);
    rule.weights.reserve(rule.nodes.capacity());
    for (int p = 0; p < resolution; ++p) {
        const double z = polar.nodes[p];
        const double rho = std::sqrt((1.0 - z) * (1.0 + z));
        for (int a = 0; a < azimuths; ++a) {
            const double phi = two_pi * a / azimuths;
            rule.nodes.push_back(Point{rho * std::cos(phi), rho * std::sin(phi), z});
            rule.weights.push_back(polar.weights[p] * two_pi / azimuths);
        }
    }
    return rule;
}

std::complex<double> integrate(const QuadratureRule& rule, std::span<const std::complex<double>> samples) {
    if (samples.size() != rule.size()) {
        throw InvalidInput("integrate: " + std::to_string(samples.size()) + " samples for " +
                           std::to_string(rule.size()) + " nodes");
    }
    std::complex<double> sum = 0.0;
    for (std::size_t m = 0; m < samples.size(); ++m) {
        sum += rule.weights[m] * samples[m];
    }
    return sum;
}

}  // namespace mps
