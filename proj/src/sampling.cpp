#include "mps/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mps/errors.hpp"

namespace mps {

Point site_centroid(const MultipointScatterer& s) {
    Point c{};
    std::size_t count = 0;
    auto accumulate = [&](const Point& p) {
        c = c + p;
        ++count;
    };
    if (s.active_count() > 0) {
        for (std::size_t a = 0; a < s.active_count(); ++a) {
            accumulate(s.active_position(a));
        }
    } else {
        for (const auto& site : s.sites()) {
            accumulate(site.position);
        }
    }
    return (1.0 / static_cast<double>(count)) * c;
}

Ball enclosing_domain(const MultipointScatterer& s) {
    double largest = 0.0;
    for (const auto& site : s.sites()) {
        largest = std::max(largest, norm(site.position));
    }
    return {site_centroid(s), 2.0 * largest + 1.0};
}

Ball sample_region(const MultipointScatterer& s) {
    const Point c = site_centroid(s);
    double spread = 0.0;
    for (std::size_t a = 0; a < s.active_count(); ++a) {
        spread = std::max(spread, norm(s.active_position(a) - c));
    }
    return {c, std::max(2.0 * spread, 1.0)};
}

std::vector<Point> sample_points_in_ball(int d, const Ball& ball, std::size_t count, std::uint64_t seed,
                                         std::span<const Point> avoid, double min_distance) {
    if (!is_valid_dimension(d)) {
        throw InvalidInput("dimension must be 1, 2 or 3");
    }
    SeededSampler sampler(seed);
    std::vector<Point> points;
    points.reserve(count);
    while (points.size() < count) {
        Point offset{};
        for (int c = 0; c < d; ++c) {
            offset[c] = sampler.uniform(-1.0, 1.0);
        }
        if (norm(offset) >= 1.0) {
            continue;
        }
        const Point x = ball.center + ball.radius * offset;
        const bool too_close = std::any_of(avoid.begin(), avoid.end(),
                                           [&](const Point& y) { return norm(x - y) < min_distance; });
        if (!too_close) {
            points.push_back(x);
        }
    }
    return points;
}

std::vector<Point> fibonacci_sphere(std::size_t count) {
    std::vector<Point> points;
    points.reserve(count);
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(count);
        const double rho = std::sqrt((1.0 - z) * (1.0 + z));
        const double phi = golden_angle * static_cast<double>(i);
        points.push_back(Point{rho * std::cos(phi), rho * std::sin(phi), z});
    }
    return points;
}

std::vector<Point> boundary_points(int d, const Ball& ball, std::size_t count) {
    std::vector<Point> directions;
    switch (d) {
        case 1:
            directions = {Point{1.0, 0.0, 0.0}, Point{-1.0, 0.0, 0.0}};
            break;
        case 2:
            for (std::size_t i = 0; i < count; ++i) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
                directions.push_back(Point{std::cos(angle), std::sin(angle), 0.0});
            }
            break;
        case 3:
            directions = fibonacci_sphere(count);
            break;
        default:
            throw InvalidInput("dimension must be 1, 2 or 3");
    }
    std::vector<Point> points;
    points.reserve(directions.size());
    for (const auto& nu : directions) {
        points.push_back(ball.center + ball.radius * nu);
    }
    return points;
}

}  // namespace mps
