#include "mlwf/cones.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace mlwf {

using std::numbers::pi;

namespace {
constexpr double kSlack = 1e-12;  // relative; keeps boundary rays out of the open cone
}

Cone::Cone(int dim, const Point& axis, double half_angle) : dim_(dim), half_angle_(half_angle) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("cone dimension must be 1, 2 or 3");
    if (!(half_angle > 0.0) || !(half_angle < pi / 2))
        throw std::invalid_argument("cone half-angle must lie in (0, 90) degrees");
    double n = 0.0;
    for (int j = 0; j < dim; ++j) n += axis[j] * axis[j];
    n = std::sqrt(n);
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("cone axis must be a nonzero vector");
    for (int j = 0; j < dim; ++j) axis_[j] = axis[j] / n;
    cos_ = std::cos(half_angle);
}

bool Cone::contains(const Index& n) const {
    double dot = 0.0, r2 = 0.0;
    for (int j = 0; j < dim_; ++j) {
        dot += axis_[j] * n[j];
        r2 += static_cast<double>(n[j]) * n[j];
    }
    if (r2 == 0.0) return false;
    double r = std::sqrt(r2);
    return dot > r * cos_ + kSlack * r;
}

bool Cone::contains_direction(const Point& u) const {
    double dot = 0.0;
    for (int j = 0; j < dim_; ++j) dot += axis_[j] * u[j];
    return dot > cos_ + kSlack;
}

Cone Cone::narrowed(double factor) const { return Cone(dim_, axis_, half_angle_ * factor); }

std::vector<Index> lattice_points_in_cone(const Cone& c, double r_min, double r_max) {
    if (r_min < 0 || r_max < r_min) throw std::invalid_argument("need 0 <= r_min <= r_max");
    const int R = static_cast<int>(std::floor(r_max));
    const int d = c.dim();
    std::vector<Index> out;
    Index n{};
    int lo[3] = {-R, d >= 2 ? -R : 0, d >= 3 ? -R : 0};
    int hi[3] = {R, d >= 2 ? R : 0, d >= 3 ? R : 0};
    for (n[0] = lo[0]; n[0] <= hi[0]; ++n[0])
        for (n[1] = lo[1]; n[1] <= hi[1]; ++n[1])
            for (n[2] = lo[2]; n[2] <= hi[2]; ++n[2]) {
                double r = std::sqrt(static_cast<double>(n[0]) * n[0] + static_cast<double>(n[1]) * n[1] +
                                     static_cast<double>(n[2]) * n[2]);
                if (r < r_min || r > r_max) continue;
                if (c.contains(n)) out.push_back(n);
            }
    return out;
}

double angle_between(const Point& a, const Point& b, int dim) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (int j = 0; j < dim; ++j) {
        dot += a[j] * b[j];
        na += a[j] * a[j];
        nb += b[j] * b[j];
    }
    double c = dot / std::sqrt(na * nb);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

double separation_constant(const Cone& g1, const Cone& g) {
    if (g1.dim() != g.dim()) throw std::invalid_argument("cones of different dimensions");
    const double gap = g.half_angle() - (angle_between(g1.axis(), g.axis(), g.dim()) + g1.half_angle());
    if (!(gap > 0.0)) throw std::invalid_argument("inner cone is not compactly contained in the outer cone");
    return std::clamp(std::sin(gap), 1e-300, 1.0);
}

std::vector<Point> direction_grid(int dim, int count) {
    std::vector<Point> out;
    if (dim == 1) return {Point{1, 0, 0}, Point{-1, 0, 0}};
    if (dim == 2) {
        if (count < 3) throw std::invalid_argument("need at least 3 directions in 2-D");
        for (int i = 0; i < count; ++i) {
            double a = 2 * pi * i / count;
            out.push_back({std::cos(a), std::sin(a), 0});
        }
        return out;
    }
    if (dim != 3) throw std::invalid_argument("direction grids exist for dimensions 1, 2 and 3");
    // Icosahedron subdivided with frequency 4: 10 * 4^2 + 2 = 162 points.
    const double t = (1 + std::sqrt(5.0)) / 2;
    const std::vector<Point> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                                  {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    const int faces[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                              {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                              {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    const int f = 4;
    std::map<std::tuple<long, long, long>, Point> uniq;
    for (const auto& F : faces)
        for (int i = 0; i <= f; ++i)
            for (int j = 0; i + j <= f; ++j) {
                int k = f - i - j;
                Point p{};
                for (int c = 0; c < 3; ++c) p[c] = (i * v[F[0]][c] + j * v[F[1]][c] + k * v[F[2]][c]) / f;
                double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
                for (double& c : p) c /= n;
                auto key = std::make_tuple(std::lround(p[0] * 1e9), std::lround(p[1] * 1e9), std::lround(p[2] * 1e9));
                uniq.emplace(key, p);
            }
    for (const auto& kv : uniq) out.push_back(kv.second);
    return out;
}

}  // namespace mlwf
