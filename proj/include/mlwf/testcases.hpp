#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlwf/coeffs.hpp"
#include "mlwf/cones.hpp"

namespace mlwf {

// Known microlocal structure of a test distribution at a base point.
struct GroundTruth {
    enum class Fiber { empty, all, conormal };
    Fiber fiber = Fiber::empty;
    Point normal{};                     // for conormal fibers: both +normal and -normal are singular
    double critical_order = 0.0;        // s* in singular directions (+inf where smooth)
    double decay_order = 0.0;           // t in singular directions (+inf where smooth)
    std::string reason;

    // Expected membership of a direction in WF_x0. Directions within `tol`
    // radians of the conormal line count as conormal.
    bool singular(const Point& unit, int dim, double tol = 1e-9) const;
};

// Ground truth at x0 for window * dist, reading the window support as the
// neighbourhood of x0.
GroundTruth ground_truth(const TestDistribution& dist, const CutoffWindow& window);

struct OracleCase {
    std::string name;
    TestDistribution dist;
    CutoffWindow window;
    GroundTruth truth;
};

// Named oracle cases with the windows used throughout the tests.
OracleCase oracle_case(const std::string& name);
std::vector<std::string> oracle_names();

// Coefficients of a case: analytic quadrature for windowed kinds, otherwise
// sampling on an M^d grid (needs M > 2 n_max).
CoeffArray generate(const OracleCase& c, int n_max, int grid_m = 0);

// Decay order expected in the singular directions of the common kinds:
// delta 0, jump 1, kink 2, line delta 0, edge 1; smooth kinds +inf.
double expected_decay_order(Kind k);
// Critical Sobolev order: delta -d/2, jump 1/2, kink 3/2, line delta -1/2, edge 1/2.
double expected_critical_order(Kind k, int dim);

}  // namespace mlwf
