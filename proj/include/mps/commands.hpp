#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mps/config.hpp"

namespace mps {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "mps 0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalidInput = 1,
    kExitNumericalFailure = 2,
    kExitInvariantFailure = 3,
};

inline constexpr std::array<std::string_view, 6> kCommandNames = {
    "green", "amplitude", "smatrix", "strong-tev", "interior-tev", "report-all"};

// Thresholds the report checks are tested against.
inline constexpr double kGreenOdeTolerance = 1e-6;
inline constexpr double kReciprocityTolerance = 1e-10;
inline constexpr double kLocalConditionTolerance = 1e-10;
inline constexpr double kDefectGapTolerance = 1e-12;
inline constexpr double kFixedPointTolerance = 1e-11;
inline constexpr double kChargeTolerance = 1e-12;
inline constexpr double kTransparencyTolerance = 1e-10;
inline constexpr double kClosedFormTolerance = 1e-14;
inline constexpr double kBoundaryAgreementFactor = 10.0;
inline constexpr double kBoundaryAgreementFloor = 1e-13;
// Eigenvectors are listed in full when emit_matrices is set or M is at most this.
inline constexpr std::size_t kListedEigenvectorLimit = 8;

struct RunOptions {
    bool emit_matrices = false;
};

// One row of a residual table: per-eigenfunction or per-site values.
struct ResidualRow {
    std::string table;
    std::size_t index = 0;
    double value = 0.0;
};

struct CommandOutcome {
    Json report;
    int exit_code = kExitOk;
    std::vector<ResidualRow> residuals;
};

bool is_command(std::string_view name);

/// Runs one pipeline on a validated config. Never throws for numerical or input
/// problems: they are recorded in the report and mapped to the exit code.
CommandOutcome run_command(std::string_view name, const RunConfig& config, const RunOptions& options = {});

/// Report for input that failed before a config existed (exit code 1).
Json invalid_input_report(std::string_view command, const std::string& message, const std::string& pointer);

/// "table,index,value" rows with a header line.
std::string residuals_csv(const std::vector<ResidualRow>& rows);

}  // namespace mps
