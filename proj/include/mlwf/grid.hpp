#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace mlwf {

using cplx = std::complex<double>;

// Points and lattice indices carry up to three coordinates; unused trailing
// entries are zero and the owning object records the dimension.
using Point = std::array<double, 3>;
using Index = std::array<int, 3>;

inline constexpr int kMaxDim = 3;

class Grid {
public:
    Grid() = default;
    Grid(int dim, int samples_per_axis);

    int dim() const { return dim_; }
    int samples_per_axis() const { return m_; }
    double spacing() const { return 1.0 / m_; }
    std::size_t size() const { return size_; }

    // Row-major, first axis slowest.
    Point point(std::size_t flat) const;
    std::size_t flat(const Index& k) const;

private:
    int dim_ = 0;
    int m_ = 0;
    std::size_t size_ = 0;
};

Grid make_grid(int dim, int samples_per_axis);

struct SampledField {
    Grid grid;
    std::vector<cplx> values;
    std::string meta;

    SampledField() = default;
    SampledField(Grid g, std::vector<cplx> v, std::string meta = {});
};

// Smooth 0 -> 1 transition built from exp(-1/t); all derivatives vanish at 0 and 1.
double smooth_step(double t);

// Distance on the circle R/Z.
double torus_distance(double a, double b);

// Tensor product of one-dimensional plateau bumps centred at `center`:
// 1 for torus distance <= inner, 0 for >= outer, smooth_step in between.
class CutoffWindow {
public:
    CutoffWindow() = default;
    CutoffWindow(int dim, const Point& center, double inner, double outer);

    int dim() const { return dim_; }
    const Point& center() const { return center_; }
    double inner() const { return inner_; }
    double outer() const { return outer_; }

    // Profile along one axis as a 1-periodic function.
    double profile(int axis, double x) const;
    // Profile as a function of the distance r >= 0 from the centre.
    double radial(double r) const;
    double operator()(const Point& x) const;

    // True if the point lies in the closed plateau (every axis within `inner`).
    bool in_plateau(const Point& x) const;
    // True if some axis is at distance >= outer (window vanishes).
    bool outside_support(const Point& x) const;

    // Copy re-centred at `c`.
    CutoffWindow recentered(const Point& c) const;

private:
    int dim_ = 0;
    Point center_{};
    double inner_ = 0.0;
    double outer_ = 0.0;
};

// Builds a window and checks it against the resolution of `grid`:
// the transition band must span at least two samples.
CutoffWindow bump_window(int dim, const Point& center, double inner, double outer);
CutoffWindow bump_window(const Grid& grid, const Point& center, double inner, double outer);

// phi * f sampled on the same grid.
SampledField periodize(const SampledField& f, const CutoffWindow& window);

// Window values on a grid.
SampledField sample_window(const CutoffWindow& window, const Grid& grid);

}  // namespace mlwf
