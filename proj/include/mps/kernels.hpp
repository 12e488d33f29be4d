#pragma once

// Dense inner loops used by the scattering-operator and transmission-eigenfunction
// pipelines. Every kernel exists twice with the same signature: kernels::serial is
// the plain reference used in tests, kernels::openmp is what the library calls.

#include <array>
#include <complex>
#include <span>

#include "mps/geometry.hpp"
#include "mps/linalg.hpp"

namespace mps::kernels {

using cdouble = std::complex<double>;

// Values and gradients of the discrete Herglotz field phi and of the matching
// superposition psi of scattering eigenfunctions at one point.
struct FieldSample {
    cdouble phi;
    cdouble psi;
    std::array<cdouble, 3> grad_phi{};
    std::array<cdouble, 3> grad_psi{};
};

// phi(x) = sum_m w_m u_m exp(i k theta_m . x)
// psi(x) = sum_m w_m u_m [exp(i k theta_m . x) + sum_j q_j(k theta_m) G+(x - y_j)]
struct HerglotzInput {
    int dimension = 0;
    double k = 0.0;
    std::span<const Point> nodes;
    std::span<const double> weights;
    std::span<const cdouble> density;  // u_m
    const ComplexMatrix* incoming_charges = nullptr;  // n x M, column m = q(k theta_m)
    std::span<const Point> sites;                   // active positions
};

namespace serial {

// out(m, m') = delta_{m m'} + scale * sum_j outgoing(j, m) phases(j, m') weights[m']
void assemble_s_matrix(cdouble scale, const ComplexMatrix& outgoing, const ComplexMatrix& phases,
                       std::span<const double> weights, ComplexMatrix& out);
// out(j, m) = exp(i k theta_m . y_j) weights[m]; empty weights mean 1
void phase_matrix(std::span<const Point> sites, double k, std::span<const Point> nodes,
                  std::span<const double> weights, ComplexMatrix& out);
// out(p, l) = exp(i kappa theta_l . x_p)
void plane_wave_matrix(cdouble kappa, std::span<const Point> directions, std::span<const Point> points,
                       ComplexMatrix& out);
void evaluate_fields(const HerglotzInput& input, std::span<const Point> points, std::span<FieldSample> out);

}  // namespace serial

namespace openmp {

void assemble_s_matrix(cdouble scale, const ComplexMatrix& outgoing, const ComplexMatrix& phases,
                       std::span<const double> weights, ComplexMatrix& out);
void phase_matrix(std::span<const Point> sites, double k, std::span<const Point> nodes,
                  std::span<const double> weights, ComplexMatrix& out);
void plane_wave_matrix(cdouble kappa, std::span<const Point> directions, std::span<const Point> points,
                       ComplexMatrix& out);
void evaluate_fields(const HerglotzInput& input, std::span<const Point> points, std::span<FieldSample> out);

}  // namespace openmp

}  // namespace mps::kernels
