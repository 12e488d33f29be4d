#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mps/geometry.hpp"

namespace mps {

/// Nodes and positive weights on the unit sphere S^{d-1}.
///
/// d = 1: the two points {+1, -1} with unit weights.
/// d = 2: M equispaced angles 2 pi m / M, weights 2 pi / M.
/// d = 3: Gauss-Legendre in cos(polar angle) times 2P equispaced azimuths,
///        ordered by (polar index, azimuth index).
struct QuadratureRule {
    int dimension = 0;
    std::vector<Point> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// Surface measure |S^{d-1}|: 2, 2 pi, 4 pi.
double sphere_measure(int d);

/// resolution is the node count for d = 2 and the polar node count for d = 3
/// (M = 2 resolution^2). d = 1 ignores it.
QuadratureRule build_rule(int d, int resolution);

/// sum_m w_m samples_m. Throws InvalidInput on a length mismatch.
std::complex<double> integrate(const QuadratureRule& rule, std::span<const std::complex<double>> samples);

struct GaussLegendre {
    std::vector<double> nodes;  // ascending on (-1, 1)
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
GaussLegendre gauss_legendre(int n);

}  // namespace mps
