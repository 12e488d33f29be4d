#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mps/geometry.hpp"
#include "mps/scatterer.hpp"

namespace mps {

struct Ball {
    Point center{};
    double radius = 1.0;
};

/// Uniform doubles in [0, 1) from mt19937_64 with an explicit bit conversion,
/// so sequences are identical across standard libraries.
class SeededSampler {
public:
    explicit SeededSampler(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

/// Centroid of the active sites (all sites when none is active).
Point site_centroid(const MultipointScatterer& s);

/// Ball centered at the site centroid with radius 2 max_j |y_j| + 1; contains every site.
Ball enclosing_domain(const MultipointScatterer& s);

/// Ball centered at the active-site centroid with radius twice the largest
/// centroid-to-site distance (at least 1). Region for transparency samples.
Ball sample_region(const MultipointScatterer& s);

/// count points uniform in the d-dimensional ball, at distance >= min_distance
/// from every point in avoid. Deterministic in seed.
std::vector<Point> sample_points_in_ball(int d, const Ball& ball, std::size_t count, std::uint64_t seed,
                                         std::span<const Point> avoid = {}, double min_distance = 1e-6);

/// count nearly uniform unit vectors in R^3 (Fibonacci lattice), pairwise distinct.
std::vector<Point> fibonacci_sphere(std::size_t count);

/// Points on the boundary sphere of a ball: the two endpoints for d = 1,
/// count equispaced angles for d = 2, a Fibonacci lattice for d = 3.
std::vector<Point> boundary_points(int d, const Ball& ball, std::size_t count);

}  // namespace mps
