// Reference kernels: straightforward loops, no caching, no threading.

#include <cmath>

#include "mps/errors.hpp"
#include "mps/kernels.hpp"
#include "mps/special_functions.hpp"

namespace mps::kernels::serial {

namespace {
constexpr cdouble kI{0.0, 1.0};
}

void assemble_s_matrix(cdouble scale, const ComplexMatrix& outgoing, const ComplexMatrix& phases,
                       std::span<const double> weights, ComplexMatrix& out) {
    const Eigen::Index size = outgoing.cols();
    out.resize(size, size);
    for (Eigen::Index m = 0; m < size; ++m) {
        for (Eigen::Index mp = 0; mp < size; ++mp) {
            cdouble kernel = 0.0;
            for (Eigen::Index j = 0; j < outgoing.rows(); ++j) {
                kernel += outgoing(j, m) * phases(j, mp);
            }
            out(m, mp) = (m == mp ? 1.0 : 0.0) + scale * kernel * weights[mp];
        }
    }
}

void phase_matrix(std::span<const Point> sites, double k, std::span<const Point> nodes,
                  std::span<const double> weights, ComplexMatrix& out) {
    out.resize(static_cast<Eigen::Index>(sites.size()), static_cast<Eigen::Index>(nodes.size()));
    for (std::size_t j = 0; j < sites.size(); ++j) {
        for (std::size_t m = 0; m < nodes.size(); ++m) {
            const double w = weights.empty() ? 1.0 : weights[m];
            out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(m)) =
                std::exp(kI * (k * dot(nodes[m], sites[j]))) * w;
        }
    }
}

void plane_wave_matrix(cdouble kappa, std::span<const Point> directions, std::span<const Point> points,
                       ComplexMatrix& out) {
    out.resize(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(directions.size()));
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t l = 0; l < directions.size(); ++l) {
            out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(l)) =
                std::exp(kI * kappa * dot(directions[l], points[p]));
        }
    }
}

void evaluate_fields(const HerglotzInput& input, std::span<const Point> points, std::span<FieldSample> out) {
    if (out.size() != points.size()) {
        throw InvalidInput("evaluate_fields: output size mismatch");
    }
    const auto k = Wavenumber::from_modulus(input.k);
    const auto& charges = *input.incoming_charges;
    for (std::size_t p = 0; p < points.size(); ++p) {
        const Point& x = points[p];
        FieldSample s{};
        for (std::size_t m = 0; m < input.nodes.size(); ++m) {
            const Point& theta = input.nodes[m];
            const cdouble wu = input.weights[m] * input.density[m];
            const cdouble wave = std::exp(kI * (input.k * dot(theta, x)));
            cdouble total = wave;
            std::array<cdouble, 3> grad_total{};
            for (int c = 0; c < 3; ++c) {
                grad_total[c] = kI * input.k * theta[c] * wave;
                s.grad_phi[c] += wu * grad_total[c];
            }
            s.phi += wu * wave;
            for (std::size_t j = 0; j < input.sites.size(); ++j) {
                const Point offset = x - input.sites[j];
                const double r = norm(offset);
                const cdouble q = charges(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(m));
                total += q * green_plus_radial(input.dimension, r, k);
                const cdouble radial = q * green_plus_radial_derivative(input.dimension, r, k);
                for (int c = 0; c < 3; ++c) {
                    grad_total[c] += radial * (offset[c] / r);
                }
            }
            s.psi += wu * total;
            for (int c = 0; c < 3; ++c) {
                s.grad_psi[c] += wu * grad_total[c];
            }
        }
        out[p] = s;
    }
}

}  // namespace mps::kernels::serial
