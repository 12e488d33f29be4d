#include "mps/scatterer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mps/errors.hpp"

namespace mps {

namespace {

constexpr cdouble kI{0.0, 1.0};

cdouble plane_wave(const Point& k, const Point& x) { return std::exp(kI * dot(k, x)); }

double checked_modulus(const Point& k, const Point& l) {
    const double nk = norm(k);
    const double nl = norm(l);
    if (!(nk > 0.0)) {
        throw InvalidInput("wavevector must be non-zero");
    }
    if (std::abs(nk - nl) > 1e-12 * nk) {
        throw InvalidInput("amplitude requires |k| = |l|");
    }
    return nk;
}

Point unit(const Point& k) { return (1.0 / norm(k)) * k; }

// Sum over active sites a' != skip of q_a' G+(x - y_a'); skip = n means none.
cdouble scattered_sum(const MultipointScatterer& s, const ComplexVector& q, const Point& x, double k_modulus,
                      std::size_t skip) {
    const auto k = Wavenumber::from_modulus(k_modulus);
    cdouble sum = 0.0;
    for (std::size_t a = 0; a < s.active_count(); ++a) {
        if (a == skip) {
            continue;
        }
        sum += q(static_cast<Eigen::Index>(a)) * green_plus(s.dimension(), x - s.active_position(a), k);
    }
    return sum;
}

}  // namespace

Strength Strength::finite(double alpha) {
    if (!std::isfinite(alpha)) {
        throw InvalidInput("finite strength requires a finite alpha; use Strength::infinite() for inert sites");
    }
    Strength s;
    s.alpha_ = alpha;
    s.inert_ = false;
    return s;
}

double Strength::alpha() const {
    if (inert_) {
        throw InvalidInput("inert site has no finite alpha");
    }
    return alpha_;
}

MultipointScatterer::MultipointScatterer(int dimension, std::vector<Site> sites)
    : dimension_(dimension), sites_(std::move(sites)) {
    if (!is_valid_dimension(dimension_)) {
        throw InvalidInput("dimension must be 1, 2 or 3, got " + std::to_string(dimension_));
    }
    if (sites_.empty()) {
        throw InvalidInput("a scatterer needs at least one site");
    }
    for (std::size_t j = 0; j < sites_.size(); ++j) {
        const auto& p = sites_[j].position;
        for (int c = 0; c < 3; ++c) {
            if (!std::isfinite(p[c])) {
                throw InvalidInput("site " + std::to_string(j) + " has a non-finite coordinate");
            }
            if (c >= dimension_ && p[c] != 0.0) {
                throw InvalidInput("site " + std::to_string(j) + " has a coordinate beyond dimension " +
                                   std::to_string(dimension_));
            }
        }
        for (std::size_t i = 0; i < j; ++i) {
            if (norm(sites_[i].position - p) < kMinSiteSeparation) {
                throw InvalidInput("sites " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
            }
        }
        if (!sites_[j].strength.is_inert()) {
            active_.push_back(j);
        }
    }
}

std::vector<Point> MultipointScatterer::active_positions() const {
    std::vector<Point> out;
    out.reserve(active_.size());
    for (auto j : active_) {
        out.push_back(sites_[j].position);
    }
    return out;
}

MultipointScatterer MultipointScatterer::without_site(std::size_t j) const {
    std::vector<Site> rest;
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        if (i != j) {
            rest.push_back(sites_[i]);
        }
    }
    return MultipointScatterer(dimension_, std::move(rest));
}

ComplexMatrix assemble_matrix(const MultipointScatterer& s, double k_modulus) {
    const auto k = Wavenumber::from_modulus(k_modulus);
    const auto n = static_cast<Eigen::Index>(s.active_count());
    const int d = s.dimension();
    cdouble diagonal_shift;
    switch (d) {
        case 1:
            diagonal_shift = 1.0 / (2.0 * kI * k_modulus);
            break;
        case 2:
            diagonal_shift = -(kPi * kI - 2.0 * std::log(k_modulus)) / (4.0 * kPi);
            break;
        default:
            diagonal_shift = -kI * k_modulus / (4.0 * kPi);
            break;
    }
    ComplexMatrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        a(j, j) = s.active_alpha(static_cast<std::size_t>(j)) + diagonal_shift;
        for (Eigen::Index i = 0; i < j; ++i) {
            const cdouble g = green_plus(d, s.active_position(static_cast<std::size_t>(j)) -
                                                 s.active_position(static_cast<std::size_t>(i)),
                                         k);
            a(i, j) = g;
            a(j, i) = g;
        }
    }
    return a;
}

ComplexVector charge_rhs(const MultipointScatterer& s, const Point& wavevector) {
    ComplexVector b(static_cast<Eigen::Index>(s.active_count()));
    for (std::size_t a = 0; a < s.active_count(); ++a) {
        b(static_cast<Eigen::Index>(a)) = -plane_wave(wavevector, s.active_position(a));
    }
    return b;
}

namespace {

SolveResult solve_or_resonance(const MultipointScatterer& s, double k_modulus, const ComplexMatrix& rhs) {
    const ComplexMatrix a = assemble_matrix(s, k_modulus);
    try {
        auto result = solve(a, rhs);
        if (result.condition_estimate > kResonanceCondition) {
            throw Resonance("charge system is ill-conditioned (condition estimate " +
                                std::to_string(result.condition_estimate) + ") at |k| = " + std::to_string(k_modulus),
                            k_modulus, result.condition_estimate);
        }
        return result;
    } catch (const SingularMatrix& e) {
        throw Resonance(std::string("charge system is singular at |k| = ") + std::to_string(k_modulus) + ": " +
                            e.what(),
                        k_modulus, std::numeric_limits<double>::infinity());
    }
}

}  // namespace

ChargeSolution solve_charges(const MultipointScatterer& s, const Point& k_direction, double k_modulus) {
    if (std::abs(norm(k_direction) - 1.0) > 1e-12) {
        throw InvalidInput("k_direction must be a unit vector");
    }
    Wavenumber::from_modulus(k_modulus);
    const auto rhs = charge_rhs(s, k_modulus * k_direction);
    auto result = solve_or_resonance(s, k_modulus, rhs);
    return {k_direction, k_modulus, result.solution.col(0), result.condition_estimate};
}

ComplexMatrix solve_charge_table(const MultipointScatterer& s, double k_modulus, const std::vector<Point>& wavevectors) {
    Wavenumber::from_modulus(k_modulus);
    ComplexMatrix rhs(static_cast<Eigen::Index>(s.active_count()), static_cast<Eigen::Index>(wavevectors.size()));
    for (std::size_t m = 0; m < wavevectors.size(); ++m) {
        if (std::abs(norm(wavevectors[m]) - k_modulus) > 1e-12 * k_modulus) {
            throw InvalidInput("charge table wavevectors must have modulus |k|");
        }
        rhs.col(static_cast<Eigen::Index>(m)) = charge_rhs(s, wavevectors[m]);
    }
    return solve_or_resonance(s, k_modulus, rhs).solution;
}

cdouble amplitude(const MultipointScatterer& s, const Point& k, const Point& l) {
    const double modulus = checked_modulus(k, l);
    if (s.active_count() == 0) {
        return 0.0;
    }
    const auto q = solve_charges(s, unit(k), modulus).charges;
    cdouble sum = 0.0;
    for (std::size_t a = 0; a < s.active_count(); ++a) {
        sum += q(static_cast<Eigen::Index>(a)) * plane_wave(-l, s.active_position(a));
    }
    return sum / std::pow(2.0 * kPi, s.dimension());
}

cdouble amplitude_reciprocal(const MultipointScatterer& s, const Point& k, const Point& l) {
    const double modulus = checked_modulus(k, l);
    if (s.active_count() == 0) {
        return 0.0;
    }
    const auto q = solve_charges(s, unit(-l), modulus).charges;
    cdouble sum = 0.0;
    for (std::size_t a = 0; a < s.active_count(); ++a) {
        sum += q(static_cast<Eigen::Index>(a)) * plane_wave(k, s.active_position(a));
    }
    return sum / std::pow(2.0 * kPi, s.dimension());
}

cdouble far_field_constant(int d, double k_modulus) {
    if (!is_valid_dimension(d)) {
        throw InvalidInput("dimension must be 1, 2 or 3");
    }
    Wavenumber::from_modulus(k_modulus);
    cdouble power;  // (-2 pi i)^{(d-1)/2}
    switch (d) {
        case 1:
            power = 1.0;
            break;
        case 2:
            power = std::sqrt(2.0 * kPi) * std::exp(-kI * (kPi / 4.0));
            break;
        default:
            power = -2.0 * kPi * kI;
            break;
    }
    return -kPi * kI * power * std::pow(k_modulus, 0.5 * (d - 3));
}

cdouble far_field(const MultipointScatterer& s, const Point& k, const Point& l) {
    const double modulus = checked_modulus(k, l);
    return far_field_constant(s.dimension(), modulus) * amplitude(s, k, l);
}

cdouble total_field(const MultipointScatterer& s, const Point& x, const Point& k) {
    const double modulus = norm(k);
    if (!(modulus > 0.0)) {
        throw InvalidInput("total_field requires |k| > 0");
    }
    for (std::size_t a = 0; a < s.active_count(); ++a) {
        if (norm(x - s.active_position(a)) < kMinSiteSeparation) {
            throw InvalidInput("total_field is singular at active site " + std::to_string(s.active_indices()[a]));
        }
    }
    if (s.active_count() == 0) {
        return plane_wave(k, x);
    }
    const auto q = solve_charges(s, unit(k), modulus).charges;
    return plane_wave(k, x) + scattered_sum(s, q, x, modulus, s.active_count());
}

LocalExpansion local_coefficients(const MultipointScatterer& s, const Point& k, std::size_t j) {
    std::size_t a = s.active_count();
    for (std::size_t i = 0; i < s.active_count(); ++i) {
        if (s.active_indices()[i] == j) {
            a = i;
        }
    }
    if (a == s.active_count()) {
        throw InvalidInput("site " + std::to_string(j) + " is not an active site");
    }
    const double modulus = norm(k);
    const auto q = solve_charges(s, unit(k), modulus).charges;
    const cdouble qa = q(static_cast<Eigen::Index>(a));
    const Point& y = s.active_position(a);
    const double alpha = s.active_alpha(a);
    const auto kw = Wavenumber::from_modulus(modulus);
    const cdouble psi_0 = plane_wave(k, y) + scattered_sum(s, q, y, modulus, a) +
                          qa * green_plus_regular_part(s.dimension(), kw);

    LocalExpansion out;
    out.site = j;
    out.psi_0 = psi_0;
    switch (s.dimension()) {
        case 1: {
            // One-sided derivatives of psi+ at y; dG+/dx = sign(x) exp(i|k||x|)/2.
            auto derivative = [&](double side) {
                cdouble value = kI * k[0] * plane_wave(k, y);
                for (std::size_t b = 0; b < s.active_count(); ++b) {
                    const double offset = y[0] - s.active_position(b)[0];
                    const double sign = (b == a) ? side : (offset > 0.0 ? 1.0 : -1.0);
                    value += q(static_cast<Eigen::Index>(b)) * sign * 0.5 * std::exp(kI * modulus * std::abs(offset));
                }
                return value;
            };
            out.psi_minus1 = derivative(1.0) - derivative(-1.0);
            out.residual = std::abs(-alpha * out.psi_minus1 - psi_0);
            break;
        }
        case 2:
            out.psi_minus1 = qa / (2.0 * kPi);
            out.residual =
                std::abs((-2.0 * kPi * alpha - std::numbers::ln2 + kEulerGamma) * out.psi_minus1 - psi_0);
            break;
        default:
            out.psi_minus1 = -qa / (4.0 * kPi);
            out.residual = std::abs(4.0 * kPi * alpha * out.psi_minus1 - psi_0);
            break;
    }
    out.relative_residual = out.residual / std::max({std::abs(out.psi_minus1), std::abs(out.psi_0), 1.0});
    return out;
}

}  // namespace mps
