#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mps/errors.hpp"
#include "mps/scatterer.hpp"

namespace mps {

inline constexpr int kDefaultNodes = 64;
// M = 2 * 8^2 = 128 directions on S^2; 64 would give 8192.
inline constexpr int kDefaultResolution3d = 8;
inline constexpr std::size_t kDefaultWaves = 16;
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Invalid configuration, located by a JSON pointer ("" for the whole document).
class ConfigError : public InvalidInput {
public:
    ConfigError(const std::string& pointer, const std::string& message)
        : InvalidInput(pointer.empty() ? message : pointer + ": " + message), pointer_(pointer) {}
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

struct RunConfig {
    int dimension = 0;
    std::vector<Site> sites;
    std::optional<std::complex<double>> energy;
    // Quadrature resolution; build_rule semantics. Unset means the per-dimension default.
    std::optional<int> nodes;
    std::size_t waves = kDefaultWaves;
    double tol = kDefaultTolerance;
    std::uint64_t seed = kDefaultSeed;

    MultipointScatterer scatterer() const { return MultipointScatterer(dimension, sites); }
    int resolution() const;
};

/// Parses and validates a JSON scatterer configuration:
///   {"dimension": 2,
///    "scatterers": [{"position": [0, 0], "alpha": 1.5}, {"position": [1, 0], "alpha": "inf"}],
///    "energy": {"re": 1, "im": 0},
///    "nodes": 64, "waves": 16, "tol": 1e-10, "seed": 42}
/// Only dimension and scatterers are required.
RunConfig parse_config(std::string_view text);

/// Checks the numeric options after command-line overrides.
void validate_options(const RunConfig& config);

}  // namespace mps
