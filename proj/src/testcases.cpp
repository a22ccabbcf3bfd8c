#include "mlwf/testcases.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mlwf {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Does the hyperplane nu.(x - p) = 0 cross the open support box of the window
// copy nearest p?
bool line_meets_support(const TestDistribution& t, const CutoffWindow& w) {
    double n0 = t.normal[0], n1 = t.normal[1];
    double c0 = w.center()[0] + std::round(t.location[0] - w.center()[0]);
    double c1 = w.center()[1] + std::round(t.location[1] - w.center()[1]);
    double lo = inf, hi = -inf;
    for (int s0 : {-1, 1})
        for (int s1 : {-1, 1}) {
            double v = n0 * (c0 + s0 * w.outer() - t.location[0]) + n1 * (c1 + s1 * w.outer() - t.location[1]);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    return lo < 0.0 && hi > 0.0;
}

bool point_in_support(const Point& p, const CutoffWindow& w) { return !w.outside_support(p); }

}  // namespace

bool GroundTruth::singular(const Point& u, int dim, double tol) const {
    switch (fiber) {
        case Fiber::empty: return false;
        case Fiber::all: return true;
        case Fiber::conormal: {
            double dot = 0.0, nn = 0.0, uu = 0.0;
            for (int j = 0; j < dim; ++j) {
                dot += u[j] * normal[j];
                nn += normal[j] * normal[j];
                uu += u[j] * u[j];
            }
            return std::fabs(dot) / std::sqrt(nn * uu) >= std::cos(tol);
        }
    }
    return false;
}

double expected_decay_order(Kind k) {
    switch (k) {
        case Kind::delta:
        case Kind::line_delta_2d: return 0.0;
        case Kind::square_wave_1d:
        case Kind::halfplane_edge_2d: return 1.0;
        case Kind::kink_1d: return 2.0;
        case Kind::gaussian:
        case Kind::plane_wave: return inf;
    }
    return inf;
}

double expected_critical_order(Kind k, int dim) {
    switch (k) {
        case Kind::delta: return -0.5 * dim;
        case Kind::line_delta_2d: return -0.5;
        case Kind::square_wave_1d:
        case Kind::halfplane_edge_2d: return 0.5;
        case Kind::kink_1d: return 1.5;
        case Kind::gaussian:
        case Kind::plane_wave: return inf;
    }
    return inf;
}

GroundTruth ground_truth(const TestDistribution& t, const CutoffWindow& w) {
    GroundTruth g;
    g.decay_order = inf;
    g.critical_order = inf;
    auto singular_everywhere = [&](const char* why) {
        g.fiber = GroundTruth::Fiber::all;
        g.decay_order = expected_decay_order(t.kind);
        g.critical_order = expected_critical_order(t.kind, t.dim);
        g.reason = why;
    };
    switch (t.kind) {
        case Kind::delta:
            if (point_in_support(t.location, w))
                singular_everywhere("point mass inside the window: its transform has constant modulus");
            else
                g.reason = "point mass outside the window support";
            break;
        case Kind::square_wave_1d:
        case Kind::kink_1d: {
            Point other = t.location;
            other[0] += 0.5;
            if (point_in_support(t.location, w) || point_in_support(other, w))
                singular_everywhere(t.kind == Kind::square_wave_1d ? "jump inside the window" : "kink inside the window");
            else
                g.reason = "function is smooth on the window support";
            break;
        }
        case Kind::halfplane_edge_2d:
        case Kind::line_delta_2d:
            if (line_meets_support(t, w)) {
                g.fiber = GroundTruth::Fiber::conormal;
                double n = std::hypot(t.normal[0], t.normal[1]);
                g.normal = {t.normal[0] / n, t.normal[1] / n, 0};
                g.decay_order = expected_decay_order(t.kind);
                g.critical_order = expected_critical_order(t.kind, 2);
                g.reason = "singular support is a line crossing the window; singular directions are its conormals";
            } else {
                g.reason = "line does not meet the window support";
            }
            break;
        case Kind::gaussian:
        case Kind::plane_wave: g.reason = "smooth"; break;
    }
    return g;
}

std::vector<std::string> oracle_names() {
    return {"delta_1d",          "square_wave_1d",        "kink_1d",       "gaussian_1d",
            "delta_2d",          "halfplane_edge_2d",     "halfplane_off_edge_2d",
            "line_delta_2d",     "gaussian_2d",           "plane_wave_2d", "delta_3d"};
}

OracleCase oracle_case(const std::string& name) {
    OracleCase c;
    c.name = name;
    TestDistribution& t = c.dist;
    Point center{0.5, 0.5, 0.5};
    double inner = 0.02, outer = 0.25;
    if (name == "delta_1d" || name == "delta_2d" || name == "delta_3d") {
        t.kind = Kind::delta;
        t.dim = name == "delta_1d" ? 1 : (name == "delta_2d" ? 2 : 3);
        t.location = center;
    } else if (name == "square_wave_1d") {
        t.kind = Kind::square_wave_1d;
        t.location = center;
    } else if (name == "kink_1d") {
        t.kind = Kind::kink_1d;
        t.location = center;
    } else if (name == "gaussian_1d" || name == "gaussian_2d") {
        // Narrow enough that the window is 1 wherever the Gaussian is above
        // roundoff, wide enough that its transform reaches the floor by |n| = 128.
        t.kind = Kind::gaussian;
        t.dim = name == "gaussian_1d" ? 1 : 2;
        t.location = center;
        t.width = 0.012;
        inner = 0.12;
    } else if (name == "halfplane_edge_2d" || name == "halfplane_off_edge_2d") {
        t.kind = Kind::halfplane_edge_2d;
        t.dim = 2;
        t.location = center;
        t.normal = {1, 0, 0};
        if (name == "halfplane_off_edge_2d") center = {0.2, 0.5, 0};
    } else if (name == "line_delta_2d") {
        t.kind = Kind::line_delta_2d;
        t.dim = 2;
        t.location = center;
        t.normal = {1, 0, 0};
    } else if (name == "plane_wave_2d") {
        t.kind = Kind::plane_wave;
        t.dim = 2;
        t.wave = {3, -2, 0};
    } else {
        throw std::invalid_argument("unknown oracle case '" + name + "'");
    }
    for (int j = t.dim; j < kMaxDim; ++j) center[j] = 0;
    c.window = bump_window(t.dim, center, inner, outer);
    c.truth = ground_truth(t, c.window);
    return c;
}

CoeffArray generate(const OracleCase& c, int n_max, int grid_m) {
    if (grid_m > 0) {
        if (!c.dist.sampleable())
            throw std::invalid_argument(c.name + " is not a function; use the analytic route");
        Grid g(c.dist.dim, grid_m);
        return fourier_coefficients(periodize(sample(c.dist, g), c.window), n_max);
    }
    return analytic_coeffs(c.dist, c.window, n_max);
}

}  // namespace mlwf
