#include "mps/tev_interior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mps/errors.hpp"
#include "mps/kernels.hpp"
#include "mps/tev_strong.hpp"

namespace mps {

namespace {

constexpr cdouble kI{0.0, 1.0};

// Regular solid harmonic R_l^m(x) for 0 <= m <= l, normalized so that
// R_m^m = (x + iy)^m / (2^m m!).
template <typename T>
std::complex<T> solid_harmonic(int l, int m, const std::array<T, 3>& x) {
    const std::complex<T> w{x[0], x[1]};
    std::complex<T> diagonal{1, 0};
    for (int j = 1; j <= m; ++j) {
        diagonal *= w / static_cast<T>(2 * j);
    }
    if (l == m) {
        return diagonal;
    }
    const T z = x[2];
    const T r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    std::complex<T> previous = diagonal;
    std::complex<T> current = z * diagonal;
    for (int j = m + 2; j <= l; ++j) {
        const std::complex<T> next =
            (static_cast<T>(2 * j - 1) * z * current - r2 * previous) / static_cast<T>((j - m) * (j + m));
        previous = current;
        current = next;
    }
    return current;
}

template <typename T>
T harmonic_2d(std::size_t l, const std::array<T, 3>& x) {
    if (l == 0) {
        return 1;
    }
    const std::size_t m = (l + 1) / 2;
    const std::complex<T> w{x[0], x[1]};
    std::complex<T> power{1, 0};
    for (std::size_t j = 0; j < m; ++j) {
        power *= w;
    }
    return (l % 2 == 1) ? power.real() : power.imag();
}

template <typename T>
T harmonic_3d(std::size_t l, const std::array<T, 3>& x) {
    std::size_t big = 0;
    while ((big + 1) * (big + 1) <= l) {
        ++big;
    }
    const std::size_t i = l - big * big;
    const auto m = static_cast<int>((i + 1) / 2);
    const std::complex<T> value = solid_harmonic(static_cast<int>(big), m, x);
    return (i == 0 || i % 2 == 1) ? value.real() : value.imag();
}

template <typename T>
std::complex<T> harmonic_member(int d, std::size_t l, const std::array<T, 3>& x) {
    switch (d) {
        case 1:
            return l == 0 ? T(1) : x[0];
        case 2:
            return harmonic_2d(l, x);
        default:
            return harmonic_3d(l, x);
    }
}

bool is_zero(cdouble e) { return e.real() == 0.0 && e.imag() == 0.0; }

}  // namespace

FreeSolutionFamily FreeSolutionFamily::plane_waves(int d, cdouble energy, std::vector<Point> directions) {
    if (!is_valid_dimension(d)) {
        throw InvalidInput("dimension must be 1, 2 or 3");
    }
    if (is_zero(energy)) {
        throw InvalidInput("plane-wave families need E != 0");
    }
    if (directions.empty()) {
        throw InvalidInput("family must have at least one member");
    }
    FreeSolutionFamily f;
    f.dimension_ = d;
    f.energy_ = energy;
    f.kappa_ = Wavenumber::from_energy(energy).value();
    f.kind_ = FamilyKind::plane_waves;
    f.size_ = directions.size();
    f.directions_ = std::move(directions);
    return f;
}

FreeSolutionFamily FreeSolutionFamily::harmonic_polynomials(int d, std::size_t count) {
    if (!is_valid_dimension(d)) {
        throw InvalidInput("dimension must be 1, 2 or 3");
    }
    if (count == 0) {
        throw InvalidInput("family must have at least one member");
    }
    if (d == 1 && count > 2) {
        throw InvalidInput("d = 1 has only two independent harmonic polynomials");
    }
    FreeSolutionFamily f;
    f.dimension_ = d;
    f.energy_ = 0.0;
    f.kappa_ = 0.0;
    f.kind_ = FamilyKind::harmonic_polynomials;
    f.size_ = count;
    return f;
}

cdouble FreeSolutionFamily::evaluate(std::size_t l, const Point& x) const {
    if (l >= size_) {
        throw InvalidInput("family member index out of range");
    }
    if (kind_ == FamilyKind::plane_waves) {
        return std::exp(kI * kappa_ * dot(directions_[l], x));
    }
    return harmonic_member(dimension_, l, x);
}

std::complex<long double> FreeSolutionFamily::evaluate_extended(std::size_t l, const ExtendedPoint& x) const {
    if (l >= size_) {
        throw InvalidInput("family member index out of range");
    }
    if (kind_ == FamilyKind::plane_waves) {
        const auto& theta = directions_[l];
        const long double phase = static_cast<long double>(theta[0]) * x[0] +
                                  static_cast<long double>(theta[1]) * x[1] +
                                  static_cast<long double>(theta[2]) * x[2];
        const std::complex<long double> kappa(kappa_.real(), kappa_.imag());
        return std::exp(std::complex<long double>(0.0L, 1.0L) * kappa * phase);
    }
    return harmonic_member(dimension_, l, x);
}

cdouble FreeSolutionFamily::laplacian(std::size_t l, const Point& x) const {
    if (kind_ == FamilyKind::harmonic_polynomials) {
        if (l >= size_) {
            throw InvalidInput("family member index out of range");
        }
        return 0.0;
    }
    return -kappa_ * kappa_ * dot(directions_[l], directions_[l]) * evaluate(l, x);
}

cdouble FreeSolutionFamily::derivative_1d(std::size_t l, double x) const {
    if (dimension_ != 1) {
        throw InvalidInput("derivative_1d needs a d = 1 family");
    }
    if (kind_ == FamilyKind::harmonic_polynomials) {
        if (l >= size_) {
            throw InvalidInput("family member index out of range");
        }
        return l == 0 ? 0.0 : 1.0;
    }
    return kI * kappa_ * directions_[l][0] * evaluate(l, Point{x, 0.0, 0.0});
}

ComplexMatrix FreeSolutionFamily::evaluate_matrix(std::span<const Point> points) const {
    ComplexMatrix out;
    if (kind_ == FamilyKind::plane_waves) {
        kernels::openmp::plane_wave_matrix(kappa_, directions_, points, out);
        return out;
    }
    out.resize(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(size_));
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t l = 0; l < size_; ++l) {
            out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(l)) = evaluate(l, points[p]);
        }
    }
    return out;
}

FreeSolutionFamily plane_wave_family(cdouble energy, std::size_t count, int d) {
    if (count == 0) {
        throw InvalidInput("family must have at least one member");
    }
    std::vector<Point> directions;
    switch (d) {
        case 1:
            if (count > 2) {
                throw InvalidInput("d = 1 has only two plane-wave directions");
            }
            directions = {Point{1.0, 0.0, 0.0}, Point{-1.0, 0.0, 0.0}};
            directions.resize(count);
            break;
        case 2:
            for (std::size_t l = 0; l < count; ++l) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(count);
                directions.push_back(Point{std::cos(angle), std::sin(angle), 0.0});
            }
            break;
        case 3:
            directions = fibonacci_sphere(count);
            break;
        default:
            throw InvalidInput("dimension must be 1, 2 or 3");
    }
    return FreeSolutionFamily::plane_waves(d, energy, std::move(directions));
}

FreeSolutionFamily free_solution_family(cdouble energy, std::size_t count, int d) {
    if (is_zero(energy)) {
        return FreeSolutionFamily::harmonic_polynomials(d, count);
    }
    return plane_wave_family(energy, count, d);
}

cdouble evaluate_combination(const FreeSolutionFamily& family, const ComplexVector& z, const Point& x) {
    if (z.size() != static_cast<Eigen::Index>(family.size())) {
        throw InvalidInput("coefficient vector length does not match the family");
    }
    cdouble sum = 0.0;
    for (std::size_t l = 0; l < family.size(); ++l) {
        sum += z(static_cast<Eigen::Index>(l)) * family.evaluate(l, x);
    }
    return sum;
}

InteriorBasis interior_eigenfunctions(const MultipointScatterer& s, const FreeSolutionFamily& family, double tol) {
    if (family.dimension() != s.dimension()) {
        throw InvalidInput("family dimension does not match the scatterer");
    }
    const std::size_t n = s.active_count();
    const std::size_t size = family.size();
    if (size <= n) {
        throw InvalidInput("family size must exceed the number of active sites");
    }
    InteriorBasis basis{family, enclosing_domain(s), 0, {}, {}};
    if (n == 0) {
        const auto N = static_cast<Eigen::Index>(size);
        basis.coefficients = ComplexMatrix::Identity(N, N);
        return basis;
    }
    const auto sites = s.active_positions();
    const auto null = null_space(family.evaluate_matrix(sites), tol);
    basis.constraint_rank = null.rank;
    basis.constraint_singular_values = null.singular_values;
    basis.coefficients = null.basis;
    return basis;
}

InteriorBasis d1_single_point_interior(const MultipointScatterer& s, cdouble energy) {
    if (s.dimension() != 1 || s.sites().size() != 1) {
        throw InvalidInput("the closed-form interior eigenfunction needs d = 1 and exactly one site");
    }
    const double y = s.sites()[0].position[0];
    ComplexVector z(2);
    if (is_zero(energy)) {
        z << -y, 1.0;
        return {FreeSolutionFamily::harmonic_polynomials(1, 2), enclosing_domain(s), 1, {}, z};
    }
    const auto family = plane_wave_family(energy, 2, 1);
    const cdouble kappa = family.kappa();
    z << std::exp(-kI * kappa * y) / (2.0 * kI), -std::exp(kI * kappa * y) / (2.0 * kI);
    return {family, enclosing_domain(s), 1, {}, z};
}

bool Lemma1Report::boundary_conditions_hold() const {
    return std::all_of(local.begin(), local.end(),
                       [](const LocalExpansion& e) { return e.residual <= kLemmaSiteTolerance; });
}

namespace {

std::complex<long double> extended_combination(const FreeSolutionFamily& family, const ComplexVector& z,
                                               const ExtendedPoint& x) {
    std::complex<long double> sum = 0.0L;
    for (std::size_t l = 0; l < family.size(); ++l) {
        const cdouble zl = z(static_cast<Eigen::Index>(l));
        sum += std::complex<long double>(zl.real(), zl.imag()) * family.evaluate_extended(l, x);
    }
    return sum;
}

// Second differences in extended precision, so that halving h exposes the O(h^2)
// truncation error rather than cancellation in the stencil.
cdouble fd_laplacian(const FreeSolutionFamily& family, const ComplexVector& z, const Point& x, double h) {
    const ExtendedPoint center{x[0], x[1], x[2]};
    const std::complex<long double> value = extended_combination(family, z, center);
    std::complex<long double> sum = 0.0L;
    for (int c = 0; c < family.dimension(); ++c) {
        ExtendedPoint plus = center;
        ExtendedPoint minus = center;
        plus[c] += h;
        minus[c] -= h;
        sum += extended_combination(family, z, plus) - 2.0L * value + extended_combination(family, z, minus);
    }
    const long double step = h;
    const std::complex<long double> laplacian = sum / (step * step);
    return {static_cast<double>(laplacian.real()), static_cast<double>(laplacian.imag())};
}

// max over the stencil of sum_l |z_l| |phi_l|, the size of the terms whose
// cancellation the second difference relies on
double stencil_magnitude(const FreeSolutionFamily& family, const ComplexVector& z, const Point& x, double h) {
    auto magnitude = [&](const Point& p) {
        double sum = 0.0;
        for (std::size_t l = 0; l < family.size(); ++l) {
            sum += std::abs(z(static_cast<Eigen::Index>(l))) * std::abs(family.evaluate(l, p));
        }
        return sum;
    };
    double largest = magnitude(x);
    for (int c = 0; c < family.dimension(); ++c) {
        Point plus = x;
        Point minus = x;
        plus[c] += h;
        minus[c] -= h;
        largest = std::max({largest, magnitude(plus), magnitude(minus)});
    }
    return largest;
}

}  // namespace

Lemma1Report lemma1_verify(const MultipointScatterer& s, const FreeSolutionFamily& family, const ComplexVector& z,
                           double h, std::size_t sample_count, std::uint64_t seed) {
    if (family.dimension() != s.dimension()) {
        throw InvalidInput("family dimension does not match the scatterer");
    }
    if (z.size() != static_cast<Eigen::Index>(family.size())) {
        throw InvalidInput("coefficient vector length does not match the family");
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw InvalidInput("finite-difference step must be positive");
    }
    const double scale = l1_norm(z);
    if (scale == 0.0) {
        throw InvalidInput("coefficient vector is zero");
    }
    const int d = s.dimension();
    const cdouble energy = family.energy();
    Lemma1Report report;
    report.fd_step = h;

    const auto sites = s.active_positions();
    for (const auto& y : sites) {
        report.max_site_value = std::max(report.max_site_value, std::abs(evaluate_combination(family, z, y)) / scale);
    }

    report.sample_points = sample_points_in_ball(d, enclosing_domain(s), sample_count, seed, sites, 1e-6);
    double largest_member = 0.0;
    double analytic = 0.0;
    double fd = 0.0;
    double fd_half = 0.0;
    double magnitude = 0.0;
    for (const auto& x : report.sample_points) {
        cdouble residual = 0.0;
        for (std::size_t l = 0; l < family.size(); ++l) {
            const cdouble value = family.evaluate(l, x);
            largest_member = std::max(largest_member, std::abs(value));
            residual += z(static_cast<Eigen::Index>(l)) * (-family.laplacian(l, x) - energy * value);
        }
        analytic = std::max(analytic, std::abs(residual));
        const cdouble phi = evaluate_combination(family, z, x);
        fd = std::max(fd, std::abs(-fd_laplacian(family, z, x, h) - energy * phi));
        fd_half = std::max(fd_half, std::abs(-fd_laplacian(family, z, x, 0.5 * h) - energy * phi));
        magnitude = std::max(magnitude, stencil_magnitude(family, z, x, h));
    }
    report.analytic_residual = analytic / (scale * std::max(1.0, std::abs(energy)) * std::max(largest_member, 1e-300));
    report.fd_residual = fd / scale;
    report.fd_residual_half = fd_half / scale;
    report.fd_ratio = fd_half > 0.0 ? fd / fd_half : std::numeric_limits<double>::infinity();
    report.fd_roundoff_floor =
        4.0 * d * static_cast<double>(std::numeric_limits<long double>::epsilon()) * magnitude / (h * h) / scale;
    // The floor grows like 1 / h^2, so the halved step is the noisier of the two.
    report.fd_at_roundoff = report.fd_residual_half <= 10.0 * 4.0 * report.fd_roundoff_floor;

    // Phi is smooth, so the singular coefficient (derivative jump for d = 1) is zero
    // and the condition reduces to the value of Phi at the site.
    for (std::size_t a = 0; a < s.active_count(); ++a) {
        const Point& y = s.active_position(a);
        const double alpha = s.active_alpha(a);
        LocalExpansion e;
        e.site = s.active_indices()[a];
        e.psi_0 = evaluate_combination(family, z, y);
        cdouble condition;
        switch (d) {
            case 1: {
                cdouble right = 0.0;
                cdouble left = 0.0;
                for (std::size_t l = 0; l < family.size(); ++l) {
                    const cdouble zl = z(static_cast<Eigen::Index>(l));
                    right += zl * family.derivative_1d(l, y[0]);
                    left += zl * family.derivative_1d(l, y[0]);
                }
                e.psi_minus1 = right - left;
                condition = -alpha * e.psi_minus1 - e.psi_0;
                break;
            }
            case 2:
                e.psi_minus1 = 0.0;
                condition = (-2.0 * std::numbers::pi * alpha - std::numbers::ln2 + kEulerGamma) * e.psi_minus1 - e.psi_0;
                break;
            default:
                e.psi_minus1 = 0.0;
                condition = 4.0 * std::numbers::pi * alpha * e.psi_minus1 - e.psi_0;
                break;
        }
        e.residual = std::abs(condition) / scale;
        e.relative_residual =
            e.residual / std::max({std::abs(e.psi_minus1) / scale, std::abs(e.psi_0) / scale, 1.0});
        report.local.push_back(e);
    }
    return report;
}

BoundaryMatch boundary_match_check(const MultipointScatterer& s, const ComplexVector& u, double energy,
                                   const QuadratureRule& rule, const Ball& boundary, std::size_t samples) {
    if (!(boundary.radius > 0.0)) {
        throw InvalidInput("boundary radius must be positive");
    }
    for (const auto& y : s.active_positions()) {
        if (norm(y - boundary.center) >= boundary.radius) {
            throw InvalidInput("boundary ball must contain every active site");
        }
    }
    const int d = s.dimension();
    const auto points = boundary_points(d, boundary, samples);
    const auto fields = density_fields(s, energy, rule, u, points);
    BoundaryMatch match;
    for (std::size_t p = 0; p < points.size(); ++p) {
        const Point normal = (1.0 / boundary.radius) * (points[p] - boundary.center);
        cdouble normal_difference = 0.0;
        for (int c = 0; c < d; ++c) {
            normal_difference += (fields[p].grad_psi[c] - fields[p].grad_phi[c]) * normal[c];
        }
        match.value_defect = std::max(match.value_defect, std::abs(fields[p].psi - fields[p].phi));
        match.normal_defect = std::max(match.normal_defect, std::abs(normal_difference));
    }
    return match;
}

IndependenceCheck family_independence(const FreeSolutionFamily& family, const Ball& domain, std::size_t sample_count,
                                      std::uint64_t seed, double tol) {
    const std::size_t count = sample_count == 0 ? std::max<std::size_t>(4 * family.size(), 20) : sample_count;
    const auto points = sample_points_in_ball(family.dimension(), domain, count, seed);
    const RealVector sigma = singular_values(family.evaluate_matrix(points));
    IndependenceCheck check;
    if (sigma.size() == 0 || sigma(0) == 0.0) {
        check.condition = std::numeric_limits<double>::infinity();
        return check;
    }
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > tol * sigma(0)) {
            ++check.rank;
        }
    }
    const double smallest = sigma(sigma.size() - 1);
    check.condition = smallest > 0.0 ? sigma(0) / smallest : std::numeric_limits<double>::infinity();
    return check;
}

}  // namespace mps
