#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "mps/errors.hpp"
#include "mps/quadrature.hpp"
#include "mps/s_operator.hpp"
#include "mps/scatterer.hpp"

using namespace mps;

namespace {

constexpr cdouble kI{0.0, 1.0};

MultipointScatterer three_sites_2d() {
    return MultipointScatterer(2, {{{0.0, 0.0, 0.0}, Strength::finite(1.0)},
                                   {{1.3, 0.2, 0.0}, Strength::finite(-0.5)},
                                   {{-0.4, 1.1, 0.0}, Strength::finite(0.3)}});
}

// D^{1/2} S D^{-1/2} with D = diag(w) acts on L^2(S^{d-1}) coordinates.
double unitarity_defect(const SMatrix& s) {
    ComplexMatrix m = s.entries();
    const auto& w = s.rule().weights;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            m(i, j) *= std::sqrt(w[static_cast<std::size_t>(i)] / w[static_cast<std::size_t>(j)]);
        }
    }
    return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).norm();
}

}  // namespace

TEST_CASE("entries match the amplitude formula") {
    const auto s = three_sites_2d();
    const double energy = 1.7;
    const double k = std::sqrt(energy);
    const auto rule = build_rule(2, 12);
    const auto S = build_s_matrix(s, energy, rule);
    for (std::size_t m : {0u, 5u, 11u}) {
        for (std::size_t mp : {0u, 3u, 7u}) {
            const cdouble f = amplitude(s, k * rule.nodes[mp], k * rule.nodes[m]);
            const cdouble expected = (m == mp ? 1.0 : 0.0) - kI * std::numbers::pi * f * rule.weights[mp];
            CHECK(std::abs(S.entries()(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(mp)) - expected) <
                  1e-15);
        }
    }
}

TEST_CASE("the resolved discrete S is unitary") {
    const auto s2 = three_sites_2d();
    CHECK(unitarity_defect(build_s_matrix(s2, 2.0, build_rule(2, 32))) < 1e-13);
    const MultipointScatterer s3(3, {{{0.0, 0.0, 0.0}, Strength::finite(1.0)},
                                     {{0.8, 0.3, -0.2}, Strength::finite(-0.7)}});
    CHECK(unitarity_defect(build_s_matrix(s3, 2.0, build_rule(3, 8))) < 1e-13);
    const MultipointScatterer s1(1, {{{0.3, 0.0, 0.0}, Strength::finite(0.7)},
                                     {{-0.5, 0.0, 0.0}, Strength::finite(-1.2)}});
    CHECK(unitarity_defect(build_s_matrix(s1, 2.0, build_rule(1, 1))) < 1e-14);
}

TEST_CASE("S - I has rank at most the number of active sites") {
    const auto s = three_sites_2d();
    const auto S = build_s_matrix(s, 1.0, build_rule(2, 40));
    const auto defect = defect_rank(S);
    CHECK(defect.rank == 3);
    CHECK(defect.singular_values(3) <= 1e-12 * defect.singular_values(0));
}

TEST_CASE("an all-inert scatterer gives the identity") {
    const MultipointScatterer s(3, {{{0, 0, 0}, Strength::infinite()}, {{1, 0, 0}, Strength::infinite()}});
    const auto S = build_s_matrix(s, 1.0, build_rule(3, 3));
    CHECK(S.entries() == ComplexMatrix::Identity(18, 18));
    CHECK(defect_rank(S).rank == 0);
    const auto moduli = eigenvalue_moduli(S);
    CHECK(moduli.front() == doctest::Approx(1.0));
}

TEST_CASE("apply multiplies by S") {
    const auto s = three_sites_2d();
    const auto S = build_s_matrix(s, 1.0, build_rule(2, 8));
    const ComplexVector u = ComplexVector::LinSpaced(8, 0.0, 1.0);
    CHECK((apply(S, u) - S.entries() * u).norm() == 0.0);
    const ComplexVector short_u = ComplexVector::Ones(3);
    CHECK_THROWS_AS(apply(S, short_u), InvalidInput);
}

TEST_CASE("build_s_matrix preconditions") {
    const auto s = three_sites_2d();
    CHECK_THROWS_AS(build_s_matrix(s, 0.0, build_rule(2, 8)), InvalidInput);
    CHECK_THROWS_AS(build_s_matrix(s, -1.0, build_rule(2, 8)), InvalidInput);
    CHECK_THROWS_AS(build_s_matrix(s, 1.0, build_rule(3, 2)), InvalidInput);
    const MultipointScatterer resonant(1, {{{0, 0, 0}, Strength::finite(0.0)},
                                           {{2.0 * std::numbers::pi, 0, 0}, Strength::finite(0.0)}});
    CHECK_THROWS_AS(build_s_matrix(resonant, 1.0, build_rule(1, 1)), Resonance);
}
