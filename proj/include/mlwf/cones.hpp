#pragma once

#include <vector>

#include "mlwf/grid.hpp"

namespace mlwf {

// Open cone {xi : angle(xi, axis) < half_angle}. In one dimension a cone is a half-line.
class Cone {
public:
    Cone() = default;
    Cone(int dim, const Point& axis, double half_angle);  // radians, in (0, pi/2)

    int dim() const { return dim_; }
    const Point& axis() const { return axis_; }
    double half_angle() const { return half_angle_; }

    bool contains(const Index& n) const;
    bool contains_direction(const Point& unit) const;
    // Same axis, half-angle scaled by `factor`.
    Cone narrowed(double factor) const;

private:
    int dim_ = 0;
    Point axis_{};
    double half_angle_ = 0.0;
    double cos_ = 1.0;
};

// Lattice points with r_min <= |n| <= r_max inside the cone, in lexicographic order.
std::vector<Index> lattice_points_in_cone(const Cone& cone, double r_min, double r_max);

// Angle between two unit vectors.
double angle_between(const Point& a, const Point& b, int dim);

// For Gamma1 compactly inside Gamma (every direction of the closed Gamma1 lies in
// Gamma), the largest c with |n - xi| >= c |xi| for all xi in Gamma1 and n outside
// Gamma. Equals sin(theta - (angle(axes) + theta1)), clamped to (0, 1).
double separation_constant(const Cone& gamma1, const Cone& gamma);

// Direction grid used by the scans: {+1, -1} in 1-D, `count` equally spaced
// angles starting at 0 in 2-D, the 162-point geodesic icosahedral grid in 3-D.
std::vector<Point> direction_grid(int dim, int count = 72);

}  // namespace mlwf
