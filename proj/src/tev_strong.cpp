#include "mps/tev_strong.hpp"

#include <cmath>

#include "mps/errors.hpp"
#include "mps/kernels.hpp"
#include "mps/sampling.hpp"

namespace mps {

namespace {

constexpr cdouble kI{0.0, 1.0};

double checked_wavenumber(const MultipointScatterer& s, double energy, const QuadratureRule& rule) {
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw InvalidInput("strong transmission eigenfunctions need real E > 0");
    }
    if (rule.dimension != s.dimension()) {
        throw InvalidInput("quadrature rule dimension does not match the scatterer");
    }
    return std::sqrt(energy);
}

}  // namespace

double l1_norm(const ComplexVector& v) { return v.cwiseAbs().sum(); }

ComplexMatrix moment_matrix(const MultipointScatterer& s, double energy, const QuadratureRule& rule) {
    const double k = checked_wavenumber(s, energy, rule);
    ComplexMatrix moments;
    kernels::openmp::phase_matrix(s.active_positions(), k, rule.nodes, rule.weights, moments);
    return moments;
}

namespace {

ComplexMatrix incoming_charge_table(const MultipointScatterer& s, double k, const QuadratureRule& rule) {
    if (s.active_count() == 0) {
        return ComplexMatrix(0, static_cast<Eigen::Index>(rule.size()));
    }
    std::vector<Point> incoming;
    incoming.reserve(rule.size());
    for (const auto& theta : rule.nodes) {
        incoming.push_back(k * theta);
    }
    return solve_charge_table(s, k, incoming);
}

void check_density(const ComplexVector& u, const QuadratureRule& rule) {
    if (u.size() != static_cast<Eigen::Index>(rule.size())) {
        throw InvalidInput("density length does not match the quadrature rule");
    }
}

}  // namespace

std::vector<kernels::FieldSample> density_fields(const MultipointScatterer& s, double energy,
                                                 const QuadratureRule& rule, const ComplexVector& u,
                                                 std::span<const Point> points) {
    const double k = checked_wavenumber(s, energy, rule);
    check_density(u, rule);
    const ComplexMatrix charges = incoming_charge_table(s, k, rule);
    const auto sites = s.active_positions();
    kernels::HerglotzInput input;
    input.dimension = s.dimension();
    input.k = k;
    input.nodes = rule.nodes;
    input.weights = rule.weights;
    input.density = std::span<const cdouble>(u.data(), static_cast<std::size_t>(u.size()));
    input.incoming_charges = &charges;
    input.sites = sites;
    std::vector<kernels::FieldSample> samples(points.size());
    kernels::openmp::evaluate_fields(input, points, samples);
    return samples;
}

TransparencyDefect transparency_check(const MultipointScatterer& s, double energy, const QuadratureRule& rule,
                                      const ComplexVector& u, std::span<const Point> points) {
    const double k = checked_wavenumber(s, energy, rule);
    check_density(u, rule);
    TransparencyDefect defect;
    const ComplexMatrix charges = incoming_charge_table(s, k, rule);
    if (charges.rows() > 0) {
        const Eigen::Map<const RealVector> weights(rule.weights.data(), static_cast<Eigen::Index>(rule.size()));
        const ComplexVector weighted = weights.cast<cdouble>().cwiseProduct(u);
        defect.max_charge = (charges * weighted).cwiseAbs().maxCoeff();
    }
    for (const auto& sample : density_fields(s, energy, rule, u, points)) {
        defect.field_defect = std::max(defect.field_defect, std::abs(sample.psi - sample.phi));
    }
    return defect;
}

std::vector<Point> transparency_sample_points(const MultipointScatterer& s, std::size_t count, std::uint64_t seed) {
    const auto sites = s.active_positions();
    return sample_points_in_ball(s.dimension(), sample_region(s), count, seed, sites, 1e-6);
}

StrongTevReport strong_eigenfunctions(const MultipointScatterer& s, double energy, const QuadratureRule& rule,
                                      const StrongTevOptions& options) {
    checked_wavenumber(s, energy, rule);
    const auto size = static_cast<Eigen::Index>(rule.size());
    StrongTevReport report;
    report.energy = energy;
    report.nodes = rule.size();
    report.seed = options.seed;

    const SMatrix s_matrix = build_s_matrix(s, energy, rule);
    report.defect = defect_rank(s_matrix, options.tol);

    if (s.active_count() == 0) {
        report.moment_rank = 0;
        report.eigenfunctions = ComplexMatrix::Identity(size, size);
    } else {
        const auto null = null_space(moment_matrix(s, energy, rule), options.tol);
        report.moment_rank = null.rank;
        report.moment_singular_values = null.singular_values;
        report.eigenfunctions = null.basis;
    }

    report.sample_points = transparency_sample_points(s, options.sample_count, options.seed);
    const ComplexMatrix defect = s_matrix.entries() * report.eigenfunctions - report.eigenfunctions;
    for (Eigen::Index c = 0; c < report.eigenfunctions.cols(); ++c) {
        const ComplexVector u = report.eigenfunctions.col(c);
        report.fixed_point_residuals.push_back(defect.col(c).norm() / u.norm());
        const auto t = transparency_check(s, energy, rule, u, report.sample_points);
        const double scale = l1_norm(u);
        report.charge_residuals.push_back(t.max_charge / scale);
        report.transparency_residuals.push_back(t.field_defect / scale);
    }
    return report;
}

ComplexVector D1Eigenvector::in_rule_order() const {
    ComplexVector u(2);
    u << u_plus, u_minus;
    return u;
}

D1Eigenvector d1_single_point_eigenvector(const MultipointScatterer& s, double energy) {
    if (s.dimension() != 1 || s.sites().size() != 1) {
        throw InvalidInput("the closed-form fixed point needs d = 1 and exactly one site");
    }
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw InvalidInput("the closed-form fixed point needs real E > 0");
    }
    const double k = std::sqrt(energy);
    const double y = s.sites()[0].position[0];
    const double r = 1.0 / std::sqrt(2.0);
    return {r * std::exp(kI * (k * y)), -r * std::exp(-kI * (k * y))};
}

}  // namespace mps
