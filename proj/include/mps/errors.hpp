#pragma once

#include <stdexcept>
#include <string>

namespace mps {

// Malformed configuration or arguments that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A pivot of the LU factorization fell below the singularity threshold.
class SingularMatrix : public std::runtime_error {
public:
    SingularMatrix(const std::string& what, double pivot_magnitude)
        : std::runtime_error(what), pivot_magnitude_(pivot_magnitude) {}

    double pivot_magnitude() const noexcept { return pivot_magnitude_; }

private:
    double pivot_magnitude_;
};

// The charge system A(|k|) q = b is numerically singular at this wavenumber.
class Resonance : public std::runtime_error {
public:
    Resonance(const std::string& what, double k_modulus, double condition_estimate)
        : std::runtime_error(what), k_modulus_(k_modulus), condition_estimate_(condition_estimate) {}

    double k_modulus() const noexcept { return k_modulus_; }
    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double k_modulus_;
    double condition_estimate_;
};

}  // namespace mps
