#include <cmath>
#include <vector>

#include "mps/errors.hpp"
#include "mps/kernels.hpp"
#include "mps/special_functions.hpp"

namespace mps::kernels::openmp {

namespace {
constexpr cdouble kI{0.0, 1.0};
}

void assemble_s_matrix(cdouble scale, const ComplexMatrix& outgoing, const ComplexMatrix& phases,
                       std::span<const double> weights, ComplexMatrix& out) {
    const Eigen::Index size = outgoing.cols();
    const Eigen::Index n = outgoing.rows();
    out.resize(size, size);
    // Column-major storage: one thread per block of columns m'.
#pragma omp parallel for schedule(static)
    for (Eigen::Index mp = 0; mp < size; ++mp) {
        const cdouble column_scale = scale * weights[mp];
        for (Eigen::Index m = 0; m < size; ++m) {
            cdouble kernel = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                kernel += outgoing(j, m) * phases(j, mp);
            }
            out(m, mp) = (m == mp ? 1.0 : 0.0) + kernel * column_scale;
        }
    }
}

void phase_matrix(std::span<const Point> sites, double k, std::span<const Point> nodes,
                  std::span<const double> weights, ComplexMatrix& out) {
    const auto n = static_cast<Eigen::Index>(sites.size());
    const auto size = static_cast<Eigen::Index>(nodes.size());
    out.resize(n, size);
#pragma omp parallel for schedule(static)
    for (Eigen::Index m = 0; m < size; ++m) {
        const double w = weights.empty() ? 1.0 : weights[m];
        for (Eigen::Index j = 0; j < n; ++j) {
            out(j, m) = std::exp(kI * (k * dot(nodes[m], sites[j]))) * w;
        }
    }
}

void plane_wave_matrix(cdouble kappa, std::span<const Point> directions, std::span<const Point> points,
                       ComplexMatrix& out) {
    const auto rows = static_cast<Eigen::Index>(points.size());
    const auto cols = static_cast<Eigen::Index>(directions.size());
    out.resize(rows, cols);
#pragma omp parallel for schedule(static)
    for (Eigen::Index l = 0; l < cols; ++l) {
        for (Eigen::Index p = 0; p < rows; ++p) {
            out(p, l) = std::exp(kI * kappa * dot(directions[l], points[p]));
        }
    }
}

void evaluate_fields(const HerglotzInput& input, std::span<const Point> points, std::span<FieldSample> out) {
    if (out.size() != points.size()) {
        throw InvalidInput("evaluate_fields: output size mismatch");
    }
    const auto k = Wavenumber::from_modulus(input.k);
    const auto& charges = *input.incoming_charges;
    const std::size_t n = input.sites.size();
    const auto count = static_cast<std::ptrdiff_t>(points.size());
    for (const auto& x : points) {
        for (const auto& y : input.sites) {
            if (!(norm(x - y) > 0.0)) {
                throw InvalidInput("evaluate_fields: evaluation point coincides with an active site");
            }
        }
    }
#pragma omp parallel
    {
        // Per-point Green values, shared by all quadrature nodes.
        std::vector<cdouble> green(n);
        std::vector<std::array<cdouble, 3>> green_gradient(n);
#pragma omp for schedule(static)
        for (std::ptrdiff_t p = 0; p < count; ++p) {
            const Point& x = points[p];
            for (std::size_t j = 0; j < n; ++j) {
                const Point offset = x - input.sites[j];
                const double r = norm(offset);
                green[j] = green_plus_radial(input.dimension, r, k);
                const cdouble radial = green_plus_radial_derivative(input.dimension, r, k);
                for (int c = 0; c < 3; ++c) {
                    green_gradient[j][c] = radial * (offset[c] / r);
                }
            }
            FieldSample s{};
            for (std::size_t m = 0; m < input.nodes.size(); ++m) {
                const Point& theta = input.nodes[m];
                const cdouble wu = input.weights[m] * input.density[m];
                const cdouble wave = std::exp(kI * (input.k * dot(theta, x)));
                cdouble scattered = 0.0;
                std::array<cdouble, 3> grad_scattered{};
                for (std::size_t j = 0; j < n; ++j) {
                    const cdouble q = charges(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(m));
                    scattered += q * green[j];
                    for (int c = 0; c < 3; ++c) {
                        grad_scattered[c] += q * green_gradient[j][c];
                    }
                }
                s.phi += wu * wave;
                s.psi += wu * (wave + scattered);
                for (int c = 0; c < 3; ++c) {
                    const cdouble grad_wave = kI * input.k * theta[c] * wave;
                    s.grad_phi[c] += wu * grad_wave;
                    s.grad_psi[c] += wu * (grad_wave + grad_scattered[c]);
                }
            }
            out[p] = s;
        }
    }
}

}  // namespace mps::kernels::openmp
