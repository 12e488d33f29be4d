#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mps/commands.hpp"
#include "mps/config.hpp"

namespace {

int emit(const mps::Json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "mps: cannot write " << out_path << "\n";
        return mps::kExitInvalidInput;
    }
    out << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multipoint scatterers: scattering data and transmission eigenfunctions", "mps"};
    app.set_version_flag("--version", mps::kVersion);

    std::string command;
    std::string config_path;
    std::optional<double> energy_re;
    std::optional<double> energy_im;
    std::optional<int> nodes;
    std::optional<std::size_t> waves;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    bool csv = false;
    bool emit_matrices = false;

    app.add_option("command", command, "green | amplitude | smatrix | strong-tev | interior-tev | report-all")
        ->required();
    app.add_option("--config", config_path, "scatterer configuration (JSON)")->required();
    app.add_option("--energy-re", energy_re, "real part of E; overrides the config");
    app.add_option("--energy-im", energy_im, "imaginary part of E; overrides the config");
    app.add_option("--nodes", nodes, "quadrature resolution (d=2: nodes, d=3: polar nodes)");
    app.add_option("--waves", waves, "size of the free-solution family");
    app.add_option("--tol", tol, "relative rank tolerance");
    app.add_option("--seed", seed, "seed for sample points");
    app.add_option("--out", out_path, "report path (default: stdout)");
    app.add_flag("--csv", csv, "also write residual tables to <out>.csv");
    app.add_flag("--emit-matrices", emit_matrices, "include full matrices in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return mps::kExitInvalidInput;
    }

    auto fail = [&](const std::string& message, const std::string& pointer) {
        std::cerr << "mps: " << message << "\n";
        emit(mps::invalid_input_report(command, message, pointer), out_path);
        return static_cast<int>(mps::kExitInvalidInput);
    };

    if (!mps::is_command(command)) {
        return fail("unknown command '" + command + "'", "");
    }
    if (csv && out_path.empty()) {
        return fail("--csv needs --out", "");
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        return fail("cannot read " + config_path, "");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    mps::RunConfig config;
    try {
        config = mps::parse_config(buffer.str());
    } catch (const mps::ConfigError& e) {
        return fail(e.what(), e.pointer());
    } catch (const mps::InvalidInput& e) {
        return fail(e.what(), "");
    }
    if (energy_re || energy_im) {
        const std::complex<double> base = config.energy.value_or(0.0);
        config.energy = std::complex<double>(energy_re.value_or(base.real()), energy_im.value_or(base.imag()));
    }
    if (nodes) {
        config.nodes = *nodes;
    }
    if (waves) {
        config.waves = *waves;
    }
    if (tol) {
        config.tol = *tol;
    }
    if (seed) {
        config.seed = *seed;
    }

    const auto outcome = mps::run_command(command, config, {emit_matrices});
    if (outcome.report.contains("error")) {
        std::cerr << "mps: " << outcome.report["error"]["message"].get<std::string>() << "\n";
    }
    if (emit(outcome.report, out_path) != 0) {
        return mps::kExitInvalidInput;
    }
    if (csv) {
        std::ofstream table(out_path + ".csv", std::ios::binary);
        table << mps::residuals_csv(outcome.residuals);
    }
    return outcome.exit_code;
}
