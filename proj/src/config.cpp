#include "mps/config.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"

namespace mps {

namespace {

using nlohmann::json;

double require_number(const json& node, const std::string& pointer) {
    if (!node.is_number()) {
        throw ConfigError(pointer, "expected a number");
    }
    const double value = node.get<double>();
    if (!std::isfinite(value)) {
        throw ConfigError(pointer, "expected a finite number");
    }
    return value;
}

std::int64_t require_integer(const json& node, const std::string& pointer) {
    if (!node.is_number_integer()) {
        throw ConfigError(pointer, "expected an integer");
    }
    return node.get<std::int64_t>();
}

Strength parse_strength(const json& node, const std::string& pointer) {
    if (node.is_string()) {
        if (node.get<std::string>() != "inf") {
            throw ConfigError(pointer, "expected a number or \"inf\"");
        }
        return Strength::infinite();
    }
    return Strength::finite(require_number(node, pointer));
}

Site parse_site(const json& node, int d, const std::string& pointer) {
    if (!node.is_object()) {
        throw ConfigError(pointer, "expected an object");
    }
    if (!node.contains("position")) {
        throw ConfigError(pointer + "/position", "missing field");
    }
    if (!node.contains("alpha")) {
        throw ConfigError(pointer + "/alpha", "missing field");
    }
    const json& position = node.at("position");
    if (!position.is_array() || position.size() != static_cast<std::size_t>(d)) {
        throw ConfigError(pointer + "/position", "expected an array of " + std::to_string(d) + " numbers");
    }
    Site site;
    for (int c = 0; c < d; ++c) {
        site.position[c] = require_number(position.at(c), pointer + "/position/" + std::to_string(c));
    }
    site.strength = parse_strength(node.at("alpha"), pointer + "/alpha");
    return site;
}

}  // namespace

int RunConfig::resolution() const {
    if (nodes) {
        return *nodes;
    }
    return dimension == 3 ? kDefaultResolution3d : kDefaultNodes;
}

RunConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("", "expected a JSON object");
    }
    RunConfig config;
    if (!doc.contains("dimension")) {
        throw ConfigError("/dimension", "missing field");
    }
    const auto d = require_integer(doc.at("dimension"), "/dimension");
    if (d < 1 || d > 3) {
        throw ConfigError("/dimension", "must be 1, 2 or 3");
    }
    config.dimension = static_cast<int>(d);

    if (!doc.contains("scatterers")) {
        throw ConfigError("/scatterers", "missing field");
    }
    const json& scatterers = doc.at("scatterers");
    if (!scatterers.is_array() || scatterers.empty()) {
        throw ConfigError("/scatterers", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < scatterers.size(); ++i) {
        config.sites.push_back(parse_site(scatterers.at(i), config.dimension, "/scatterers/" + std::to_string(i)));
    }
    try {
        (void)config.scatterer();
    } catch (const InvalidInput& e) {
        throw ConfigError("/scatterers", e.what());
    }

    if (doc.contains("energy")) {
        const json& energy = doc.at("energy");
        if (!energy.is_object() || !energy.contains("re")) {
            throw ConfigError("/energy", "expected an object with \"re\" and optional \"im\"");
        }
        const double re = require_number(energy.at("re"), "/energy/re");
        const double im = energy.contains("im") ? require_number(energy.at("im"), "/energy/im") : 0.0;
        config.energy = std::complex<double>(re, im);
    }
    if (doc.contains("nodes")) {
        const auto nodes = require_integer(doc.at("nodes"), "/nodes");
        if (nodes < 1 || nodes > std::numeric_limits<int>::max()) {
            throw ConfigError("/nodes", "must be a positive integer");
        }
        config.nodes = static_cast<int>(nodes);
    }
    if (doc.contains("waves")) {
        const auto waves = require_integer(doc.at("waves"), "/waves");
        if (waves < 1) {
            throw ConfigError("/waves", "must be a positive integer");
        }
        config.waves = static_cast<std::size_t>(waves);
    }
    if (doc.contains("tol")) {
        config.tol = require_number(doc.at("tol"), "/tol");
    }
    if (doc.contains("seed")) {
        const auto seed = require_integer(doc.at("seed"), "/seed");
        if (seed < 0) {
            throw ConfigError("/seed", "must be non-negative");
        }
        config.seed = static_cast<std::uint64_t>(seed);
    }
    validate_options(config);
    return config;
}

void validate_options(const RunConfig& config) {
    if (config.nodes && *config.nodes < 1) {
        throw ConfigError("/nodes", "must be a positive integer");
    }
    if (config.waves < 1) {
        throw ConfigError("/waves", "must be a positive integer");
    }
    if (!(config.tol > 0.0 && config.tol < 1.0)) {
        throw ConfigError("/tol", "must lie in (0, 1)");
    }
    if (config.energy && (!std::isfinite(config.energy->real()) || !std::isfinite(config.energy->imag()))) {
        throw ConfigError("/energy", "must be finite");
    }
}

}  // namespace mps
