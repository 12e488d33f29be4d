#include "mps/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "mps/errors.hpp"
#include "mps/quadrature.hpp"
#include "mps/s_operator.hpp"
#include "mps/sampling.hpp"
#include "mps/scatterer.hpp"
#include "mps/special_functions.hpp"
#include "mps/tev_interior.hpp"
#include "mps/tev_strong.hpp"

namespace mps {

namespace {

constexpr std::size_t kStrongSamples = 20;
constexpr std::size_t kBoundarySamples = 32;
constexpr std::size_t kAmplitudeDirections = 8;
constexpr std::size_t kLemmaSamples = 10;
constexpr double kLemmaStep = 1e-3;
constexpr double kIndependenceTolerance = 1e-14;

Json complex_json(cdouble z) { return Json::array({z.real(), z.imag()}); }

Json point_json(const Point& p, int d) {
    Json out = Json::array();
    for (int c = 0; c < d; ++c) {
        out.push_back(p[c]);
    }
    return out;
}

Json vector_json(const ComplexVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_json(v(i)));
    }
    return out;
}

Json matrix_json(const ComplexMatrix& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out.push_back(vector_json(m.row(r).transpose()));
    }
    return out;
}

Json real_vector_json(const RealVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

double max_of(const std::vector<double>& values) {
    double m = 0.0;
    for (double v : values) {
        m = std::max(m, v);
    }
    return m;
}

double relative_difference(cdouble a, cdouble b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

bool is_real_positive(cdouble e) { return e.imag() == 0.0 && e.real() > 0.0; }

// Collects checks and residual tables while the sections run.
class Recorder {
public:
    explicit Recorder(Json& checks, std::vector<ResidualRow>& rows) : checks_(checks), rows_(rows) {}

    void at_most(const std::string& name, double value, double tolerance) {
        add(name, value, tolerance, value <= tolerance);
    }

    void equals(const std::string& name, std::size_t value, std::size_t expected) {
        Json c;
        c["name"] = name;
        c["value"] = value;
        c["expected"] = expected;
        c["tolerance"] = 0;
        c["passed"] = value == expected;
        checks_.push_back(std::move(c));
    }

    void add(const std::string& name, double value, double tolerance, bool passed) {
        Json c;
        c["name"] = name;
        c["value"] = value;
        c["tolerance"] = tolerance;
        c["passed"] = passed;
        checks_.push_back(std::move(c));
    }

    void table(const std::string& name, const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            rows_.push_back({name, i, values[i]});
        }
    }

private:
    Json& checks_;
    std::vector<ResidualRow>& rows_;
};

cdouble required_energy(const RunConfig& config) {
    if (!config.energy) {
        throw ConfigError("/energy", "an energy is required (config field or --energy-re/--energy-im)");
    }
    return *config.energy;
}

double required_positive_energy(const RunConfig& config, std::string_view command) {
    const cdouble e = required_energy(config);
    if (!is_real_positive(e)) {
        throw ConfigError("/energy", std::string(command) + " needs a real energy E > 0");
    }
    return e.real();
}

Json config_json(const RunConfig& config, const RunOptions& options) {
    Json out;
    out["dimension"] = config.dimension;
    Json sites = Json::array();
    for (const auto& site : config.sites) {
        Json entry;
        entry["position"] = point_json(site.position, config.dimension);
        if (site.strength.is_inert()) {
            entry["alpha"] = "inf";
        } else {
            entry["alpha"] = site.strength.alpha();
        }
        sites.push_back(std::move(entry));
    }
    out["scatterers"] = std::move(sites);
    if (config.energy) {
        out["energy"] = {{"re", config.energy->real()}, {"im", config.energy->imag()}};
    } else {
        out["energy"] = nullptr;
    }
    out["nodes"] = config.resolution();
    out["quadrature_size"] = build_rule(config.dimension, config.resolution()).size();
    out["waves"] = config.waves;
    out["tol"] = config.tol;
    out["seed"] = config.seed;
    out["emit_matrices"] = options.emit_matrices;
    return out;
}

Json green_section(const RunConfig& config, Recorder& rec) {
    const cdouble energy = required_energy(config);
    if (energy == cdouble(0.0)) {
        throw ConfigError("/energy", "green needs E != 0");
    }
    const int d = config.dimension;
    const auto k = Wavenumber::from_energy(energy);
    if (d == 2 && !k.is_real_positive()) {
        throw ConfigError("/energy", "the d = 2 Green function needs a real energy E > 0");
    }
    const auto s = config.scatterer();
    Json out;
    out["k"] = complex_json(k.value());
    out["regular_part"] = complex_json(green_plus_regular_part(d, k));

    Json pairs = Json::array();
    double symmetry = 0.0;
    for (std::size_t i = 0; i < s.sites().size(); ++i) {
        for (std::size_t j = i + 1; j < s.sites().size(); ++j) {
            const Point x = s.sites()[i].position - s.sites()[j].position;
            const cdouble forward = green_plus(d, x, k);
            symmetry = std::max(symmetry, relative_difference(forward, green_plus(d, -x, k)));
            Json p;
            p["i"] = i;
            p["j"] = j;
            p["distance"] = norm(x);
            p["value"] = complex_json(forward);
            pairs.push_back(std::move(p));
        }
    }
    out["pairs"] = std::move(pairs);

    // G'' + (d - 1)/r G' + E G = 0 away from the origin, with G'' from a central
    // difference of the analytic G'.
    Json radial = Json::array();
    std::vector<double> ode;
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double h = 1e-4 * r;
        const cdouble g = green_plus_radial(d, r, k);
        const cdouble g1 = green_plus_radial_derivative(d, r, k);
        const cdouble g2 =
            (green_plus_radial_derivative(d, r + h, k) - green_plus_radial_derivative(d, r - h, k)) / (2.0 * h);
        const cdouble first = (d - 1.0) / r * g1;
        const cdouble zeroth = k.energy() * g;
        const double scale = std::max({std::abs(g2), std::abs(first), std::abs(zeroth)});
        ode.push_back(std::abs(g2 + first + zeroth) / scale);
        Json p;
        p["r"] = r;
        p["value"] = complex_json(g);
        p["derivative"] = complex_json(g1);
        radial.push_back(std::move(p));
    }
    out["radial"] = std::move(radial);
    rec.at_most("green_pair_symmetry", symmetry, 0.0);
    rec.at_most("green_radial_equation", max_of(ode), kGreenOdeTolerance);
    rec.table("green_radial_equation", ode);
    return out;
}

Json amplitude_section(const RunConfig& config, Recorder& rec) {
    const double energy = required_positive_energy(config, "amplitude");
    const double k = std::sqrt(energy);
    const auto s = config.scatterer();
    const int d = config.dimension;
    const auto rule = build_rule(d, config.resolution());
    const std::size_t stride = std::max<std::size_t>(1, rule.size() / kAmplitudeDirections);
    std::vector<Point> directions;
    for (std::size_t m = 0; m < rule.size() && directions.size() < kAmplitudeDirections; m += stride) {
        directions.push_back(rule.nodes[m]);
    }

    Json out;
    out["k_modulus"] = k;
    out["far_field_constant"] = complex_json(far_field_constant(d, k));
    Json incident = Json::array();
    std::vector<double> local;
    for (const auto& theta : directions) {
        const auto solution = solve_charges(s, theta, k);
        Json entry;
        entry["direction"] = point_json(theta, d);
        entry["charges"] = vector_json(solution.charges);
        entry["condition_estimate"] = solution.condition_estimate;
        incident.push_back(std::move(entry));
        for (std::size_t j : s.active_indices()) {
            local.push_back(local_coefficients(s, k * theta, j).relative_residual);
        }
    }
    out["incident"] = std::move(incident);

    Json table = Json::array();
    std::vector<double> reciprocity;
    std::vector<double> forms;
    for (const auto& a : directions) {
        for (const auto& b : directions) {
            const Point kin = k * a;
            const Point kout = k * b;
            const cdouble f = amplitude(s, kin, kout);
            reciprocity.push_back(relative_difference(f, amplitude(s, -kout, -kin)));
            forms.push_back(relative_difference(f, amplitude_reciprocal(s, kin, kout)));
            Json entry;
            entry["incoming"] = point_json(a, d);
            entry["outgoing"] = point_json(b, d);
            entry["f"] = complex_json(f);
            entry["f_plus"] = complex_json(far_field_constant(d, k) * f);
            table.push_back(std::move(entry));
        }
    }
    out["amplitudes"] = std::move(table);
    rec.at_most("reciprocity", max_of(reciprocity), kReciprocityTolerance);
    rec.at_most("amplitude_forms_agree", max_of(forms), kReciprocityTolerance);
    rec.at_most("local_boundary_conditions", max_of(local), kLocalConditionTolerance);
    rec.table("reciprocity", reciprocity);
    rec.table("local_boundary_conditions", local);
    return out;
}

Json smatrix_section(const RunConfig& config, const RunOptions& options, Recorder& rec) {
    const double energy = required_positive_energy(config, "smatrix");
    const auto s = config.scatterer();
    const auto rule = build_rule(config.dimension, config.resolution());
    const auto S = build_s_matrix(s, energy, rule);
    const auto defect = defect_rank(S, config.tol);
    const std::size_t n = s.active_count();

    Json out;
    out["size"] = S.size();
    out["active_sites"] = n;
    out["defect_rank"] = defect.rank;
    out["defect_singular_values"] = real_vector_json(defect.singular_values);
    const auto moduli = eigenvalue_moduli(S);
    out["eigenvalue_modulus_min"] = moduli.front();
    out["eigenvalue_modulus_max"] = moduli.back();
    if (options.emit_matrices) {
        out["matrix"] = matrix_json(S.entries());
    }
    rec.add("defect_rank_at_most_active_sites", static_cast<double>(defect.rank), static_cast<double>(n),
            defect.rank <= n);
    const auto& sigma = defect.singular_values;
    if (n > 0 && static_cast<std::size_t>(sigma.size()) > n && sigma(0) > 0.0) {
        const double gap = sigma(static_cast<Eigen::Index>(n)) / sigma(0);
        out["defect_gap"] = gap;
        rec.at_most("defect_gap", gap, kDefectGapTolerance);
    }
    return out;
}

Json strong_tev_section(const RunConfig& config, const RunOptions& options, Recorder& rec) {
    const double energy = required_positive_energy(config, "strong-tev");
    const auto s = config.scatterer();
    const int d = config.dimension;
    const auto rule = build_rule(d, config.resolution());
    const auto report = strong_eigenfunctions(s, energy, rule, {config.tol, config.seed, kStrongSamples});
    const std::size_t n = s.active_count();
    const std::size_t m = rule.size();
    const auto count = static_cast<std::size_t>(report.eigenfunctions.cols());

    Json out;
    out["size"] = m;
    out["active_sites"] = n;
    out["defect_rank"] = report.defect.rank;
    out["moment_rank"] = report.moment_rank;
    out["moment_singular_values"] = real_vector_json(report.moment_singular_values);
    out["eigenspace_dimension"] = count;
    Json samples = Json::array();
    for (const auto& p : report.sample_points) {
        samples.push_back(point_json(p, d));
    }
    out["sample_points"] = std::move(samples);
    if (options.emit_matrices || m <= kListedEigenvectorLimit) {
        Json vectors = Json::array();
        for (std::size_t c = 0; c < count; ++c) {
            vectors.push_back(vector_json(report.eigenfunctions.col(static_cast<Eigen::Index>(c))));
        }
        out["eigenfunctions"] = std::move(vectors);
    }

    // The same eigenfunctions seen as interior transmission eigenfunctions:
    // psi and phi must also agree with their normal derivatives on a sphere around the sites.
    const Ball boundary = enclosing_domain(s);
    std::vector<double> boundary_defects;
    std::vector<double> agreement;
    for (std::size_t c = 0; c < count; ++c) {
        const ComplexVector u = report.eigenfunctions.col(static_cast<Eigen::Index>(c));
        const auto match = boundary_match_check(s, u, energy, rule, boundary, kBoundarySamples);
        const double scaled = std::max(match.value_defect, match.normal_defect) / l1_norm(u);
        boundary_defects.push_back(scaled);
        const double t = report.transparency_residuals[c];
        const bool both_small = scaled <= kBoundaryAgreementFloor && t <= kBoundaryAgreementFloor;
        const bool within = scaled <= kBoundaryAgreementFactor * std::max(t, kBoundaryAgreementFloor) &&
                            t <= kBoundaryAgreementFactor * std::max(scaled, kBoundaryAgreementFloor);
        agreement.push_back(both_small || within ? 0.0 : 1.0);
    }
    out["boundary"] = {{"center", point_json(boundary.center, d)}, {"radius", boundary.radius},
                       {"samples", boundary_points(d, boundary, kBoundarySamples).size()}};

    rec.equals("eigenspace_dimension", count, m - std::min(m, n));
    rec.add("defect_rank_at_most_active_sites", static_cast<double>(report.defect.rank), static_cast<double>(n),
            report.defect.rank <= n);
    rec.at_most("fixed_point_residual", max_of(report.fixed_point_residuals), kFixedPointTolerance);
    rec.at_most("charge_residual", max_of(report.charge_residuals), kChargeTolerance);
    rec.at_most("transparency_residual", max_of(report.transparency_residuals), kTransparencyTolerance);
    rec.at_most("boundary_residual", max_of(boundary_defects), kTransparencyTolerance);
    rec.at_most("boundary_matches_transparency", max_of(agreement), 0.0);
    rec.table("fixed_point_residual", report.fixed_point_residuals);
    rec.table("charge_residual", report.charge_residuals);
    rec.table("transparency_residual", report.transparency_residuals);
    rec.table("boundary_residual", boundary_defects);

    if (d == 1 && s.sites().size() == 1) {
        const ComplexVector u = d1_single_point_eigenvector(s, energy).in_rule_order();
        const auto S = build_s_matrix(s, energy, rule);
        const double residual = (apply(S, u) - u).norm() / u.norm();
        out["closed_form"] = vector_json(u);
        rec.at_most("closed_form_fixed_point", residual, kClosedFormTolerance);
    }
    return out;
}

Json interior_tev_section(const RunConfig& config, Recorder& rec) {
    const cdouble energy = required_energy(config);
    const auto s = config.scatterer();
    const int d = config.dimension;
    const std::size_t n = s.active_count();

    std::optional<InteriorBasis> basis;
    if (d == 1) {
        if (s.sites().size() == 1) {
            basis = d1_single_point_interior(s, energy);
        } else {
            if (n >= 2) {
                throw InvalidInput("d = 1 families have two members; at most one active site is supported");
            }
            basis = interior_eigenfunctions(s, free_solution_family(energy, 2, 1), config.tol);
        }
    } else {
        if (config.waves <= n) {
            throw ConfigError("/waves", "must exceed the number of active sites");
        }
        basis = interior_eigenfunctions(s, free_solution_family(energy, config.waves, d), config.tol);
    }
    const auto& family = basis->family;
    const auto count = static_cast<std::size_t>(basis->coefficients.cols());
    const auto independence = family_independence(family, basis->domain, 0, config.seed, kIndependenceTolerance);

    Json out;
    out["family"] = family.kind() == FamilyKind::plane_waves ? "plane_waves" : "harmonic_polynomials";
    out["family_size"] = family.size();
    out["kappa"] = complex_json(family.kappa());
    out["domain"] = {{"center", point_json(basis->domain.center, d)}, {"radius", basis->domain.radius}};
    out["constraint_rank"] = basis->constraint_rank;
    out["eigenfunction_count"] = count;
    out["family_rank"] = independence.rank;
    out["family_condition"] = independence.condition;

    std::vector<double> site_values;
    std::vector<double> analytic;
    std::vector<double> fd_ratio;
    std::vector<double> fd_scaling_failed;
    std::vector<double> local;
    for (std::size_t c = 0; c < count; ++c) {
        const ComplexVector z = basis->coefficients.col(static_cast<Eigen::Index>(c));
        const auto lemma = lemma1_verify(s, family, z, kLemmaStep, kLemmaSamples, config.seed);
        site_values.push_back(lemma.max_site_value);
        analytic.push_back(lemma.analytic_residual);
        fd_ratio.push_back(lemma.fd_ratio);
        const bool scaling = lemma.fd_at_roundoff || (lemma.fd_ratio >= kFdRatioLow && lemma.fd_ratio <= kFdRatioHigh);
        fd_scaling_failed.push_back(scaling ? 0.0 : 1.0);
        double worst = 0.0;
        for (const auto& e : lemma.local) {
            worst = std::max(worst, e.residual);
        }
        local.push_back(worst);
    }
    out["fd_step"] = kLemmaStep;
    out["fd_ratio_window"] = Json::array({kFdRatioLow, kFdRatioHigh});

    rec.add("eigenfunction_count_at_least_N_minus_n", static_cast<double>(count),
            static_cast<double>(family.size() - n), count >= family.size() - n);
    rec.equals("family_rank", independence.rank, family.size());
    rec.at_most("site_values", max_of(site_values), kLemmaSiteTolerance);
    rec.at_most("helmholtz_analytic", max_of(analytic), kLemmaAnalyticTolerance);
    rec.at_most("helmholtz_fd_scaling", max_of(fd_scaling_failed), 0.0);
    rec.at_most("local_boundary_conditions", max_of(local), kLemmaSiteTolerance);
    rec.table("site_values", site_values);
    rec.table("helmholtz_analytic", analytic);
    rec.table("helmholtz_fd_ratio", fd_ratio);
    rec.table("local_boundary_conditions", local);
    return out;
}

Json run_sections(std::string_view name, const RunConfig& config, const RunOptions& options, Recorder& rec,
                  Json& results) {
    if (name == "green") {
        results = green_section(config, rec);
    } else if (name == "amplitude") {
        results = amplitude_section(config, rec);
    } else if (name == "smatrix") {
        results = smatrix_section(config, options, rec);
    } else if (name == "strong-tev") {
        results = strong_tev_section(config, options, rec);
    } else if (name == "interior-tev") {
        results = interior_tev_section(config, rec);
    } else {
        const cdouble energy = required_energy(config);
        const bool positive = is_real_positive(energy);
        const std::string skip = "needs a real energy E > 0";
        results = Json::object();
        if (config.dimension == 2 && !positive) {
            results["green"] = {{"skipped", "the d = 2 Green function " + skip}};
        } else {
            results["green"] = green_section(config, rec);
        }
        if (positive) {
            results["amplitude"] = amplitude_section(config, rec);
            results["smatrix"] = smatrix_section(config, options, rec);
            results["strong-tev"] = strong_tev_section(config, options, rec);
        } else {
            for (const char* section : {"amplitude", "smatrix", "strong-tev"}) {
                results[section] = {{"skipped", skip}};
            }
        }
        results["interior-tev"] = interior_tev_section(config, rec);
    }
    return results;
}

}  // namespace

bool is_command(std::string_view name) {
    return std::find(kCommandNames.begin(), kCommandNames.end(), name) != kCommandNames.end();
}

CommandOutcome run_command(std::string_view name, const RunConfig& config, const RunOptions& options) {
    CommandOutcome outcome;
    Json& report = outcome.report;
    report["version"] = kVersion;
    report["command"] = std::string(name);
    Json checks = Json::array();
    Json results = Json::object();
    Recorder rec(checks, outcome.residuals);
    Json error;
    try {
        if (!is_command(name)) {
            throw InvalidInput("unknown command '" + std::string(name) + "'");
        }
        validate_options(config);
        report["config"] = config_json(config, options);
        run_sections(name, config, options, rec, results);
    } catch (const Resonance& e) {
        outcome.exit_code = kExitNumericalFailure;
        error = {{"kind", "resonance"},
                 {"message", e.what()},
                 {"k_modulus", e.k_modulus()},
                 {"condition_estimate", e.condition_estimate()}};
    } catch (const SingularMatrix& e) {
        outcome.exit_code = kExitNumericalFailure;
        error = {{"kind", "singular_matrix"}, {"message", e.what()}, {"pivot_magnitude", e.pivot_magnitude()}};
    } catch (const ConfigError& e) {
        outcome.exit_code = kExitInvalidInput;
        error = {{"kind", "invalid_input"}, {"message", e.what()}, {"pointer", e.pointer()}};
    } catch (const InvalidInput& e) {
        outcome.exit_code = kExitInvalidInput;
        error = {{"kind", "invalid_input"}, {"message", e.what()}};
    }
    report["results"] = std::move(results);
    const bool all_passed =
        std::all_of(checks.begin(), checks.end(), [](const Json& c) { return c.at("passed").get<bool>(); });
    report["checks"] = std::move(checks);
    if (outcome.exit_code == kExitOk && !all_passed) {
        outcome.exit_code = kExitInvariantFailure;
    }
    switch (outcome.exit_code) {
        case kExitOk:
            report["status"] = "ok";
            break;
        case kExitInvalidInput:
            report["status"] = "invalid_input";
            break;
        case kExitNumericalFailure:
            report["status"] = "numerical_failure";
            break;
        default:
            report["status"] = "invariant_failure";
            break;
    }
    if (!error.is_null()) {
        report["error"] = std::move(error);
    }
    return outcome;
}

Json invalid_input_report(std::string_view command, const std::string& message, const std::string& pointer) {
    Json report;
    report["version"] = kVersion;
    report["command"] = std::string(command);
    report["status"] = "invalid_input";
    report["error"] = {{"kind", "invalid_input"}, {"message", message}, {"pointer", pointer}};
    return report;
}

std::string residuals_csv(const std::vector<ResidualRow>& rows) {
    std::ostringstream out;
    out.precision(17);
    out << "table,index,value\n";
    for (const auto& row : rows) {
        out << row.table << ',' << row.index << ',' << row.value << '\n';
    }
    return out.str();
}

}  // namespace mps
