#pragma once

#include <array>
#include <cmath>

namespace mps {

// Points and directions in R^d, d <= 3. Unused trailing coordinates are zero.
using Point = std::array<double, 3>;

inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline double norm(const Point& a) { return std::hypot(a[0], a[1], a[2]); }

inline Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

inline Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

inline Point operator-(const Point& a) { return {-a[0], -a[1], -a[2]}; }

inline Point operator*(double s, const Point& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline bool is_valid_dimension(int d) { return d >= 1 && d <= 3; }

}  // namespace mps
