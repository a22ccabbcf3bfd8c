#include "mlwf/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mlwf {

Grid::Grid(int dim, int samples_per_axis) : dim_(dim), m_(samples_per_axis) {
    if (dim < 1 || dim > kMaxDim)
        throw std::invalid_argument("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
    if (samples_per_axis < 2)
        throw std::invalid_argument("grid needs at least 2 samples per axis, got " +
                                    std::to_string(samples_per_axis));
    size_ = 1;
    for (int j = 0; j < dim; ++j) size_ *= static_cast<std::size_t>(samples_per_axis);
}

Point Grid::point(std::size_t flat) const {
    Point p{};
    for (int j = dim_ - 1; j >= 0; --j) {
        p[j] = static_cast<double>(flat % m_) / m_;
        flat /= m_;
    }
    return p;
}

std::size_t Grid::flat(const Index& k) const {
    std::size_t f = 0;
    for (int j = 0; j < dim_; ++j) {
        int kj = ((k[j] % m_) + m_) % m_;
        f = f * m_ + static_cast<std::size_t>(kj);
    }
    return f;
}

Grid make_grid(int dim, int samples_per_axis) { return Grid(dim, samples_per_axis); }

SampledField::SampledField(Grid g, std::vector<cplx> v, std::string m)
    : grid(g), values(std::move(v)), meta(std::move(m)) {
    if (values.size() != grid.size())
        throw std::invalid_argument("field has " + std::to_string(values.size()) +
                                    " samples, grid expects " + std::to_string(grid.size()));
    for (const cplx& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("field contains non-finite samples");
}

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double a = std::exp(-1.0 / t);
    double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double torus_distance(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 1.0);
    return d > 0.5 ? 1.0 - d : d;
}

CutoffWindow::CutoffWindow(int dim, const Point& center, double inner, double outer)
    : dim_(dim), inner_(inner), outer_(outer) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("window dimension must be 1, 2 or 3");
    if (!(inner > 0.0)) throw std::invalid_argument("window plateau radius must be positive");
    if (!(inner < outer)) throw std::invalid_argument("window plateau radius must be below its support radius");
    if (!(outer < 0.5)) throw std::invalid_argument("window support radius must be below 1/2");
    for (int j = 0; j < dim; ++j) {
        if (!std::isfinite(center[j])) throw std::invalid_argument("window centre is not finite");
        double c = center[j] - std::floor(center[j]);
        center_[j] = c >= 1.0 ? 0.0 : c;
    }
}

double CutoffWindow::radial(double r) const {
    if (r <= inner_) return 1.0;
    if (r >= outer_) return 0.0;
    return smooth_step((outer_ - r) / (outer_ - inner_));
}

double CutoffWindow::profile(int axis, double x) const { return radial(torus_distance(x, center_[axis])); }

double CutoffWindow::operator()(const Point& x) const {
    double v = 1.0;
    for (int j = 0; j < dim_ && v != 0.0; ++j) v *= profile(j, x[j]);
    return v;
}

bool CutoffWindow::in_plateau(const Point& x) const {
    for (int j = 0; j < dim_; ++j)
        if (torus_distance(x[j], center_[j]) > inner_) return false;
    return true;
}

bool CutoffWindow::outside_support(const Point& x) const {
    for (int j = 0; j < dim_; ++j)
        if (torus_distance(x[j], center_[j]) >= outer_) return true;
    return false;
}

CutoffWindow CutoffWindow::recentered(const Point& c) const { return CutoffWindow(dim_, c, inner_, outer_); }

CutoffWindow bump_window(int dim, const Point& center, double inner, double outer) {
    return CutoffWindow(dim, center, inner, outer);
}

CutoffWindow bump_window(const Grid& grid, const Point& center, double inner, double outer) {
    CutoffWindow w(grid.dim(), center, inner, outer);
    if (outer - inner < 2.0 * grid.spacing())
        throw std::invalid_argument("window transition band is narrower than two grid spacings");
    return w;
}

SampledField sample_window(const CutoffWindow& window, const Grid& grid) {
    if (window.dim() != grid.dim()) throw std::invalid_argument("window and grid dimensions differ");
    const int m = grid.samples_per_axis();
    std::vector<std::vector<double>> prof(grid.dim(), std::vector<double>(m));
    for (int j = 0; j < grid.dim(); ++j)
        for (int k = 0; k < m; ++k) prof[j][k] = window.profile(j, static_cast<double>(k) / m);
    std::vector<cplx> v(grid.size());
    for (std::size_t f = 0; f < grid.size(); ++f) {
        std::size_t r = f;
        double p = 1.0;
        for (int j = grid.dim() - 1; j >= 0; --j) {
            p *= prof[j][r % m];
            r /= m;
        }
        v[f] = p;
    }
    return SampledField(grid, std::move(v), "window");
}

SampledField periodize(const SampledField& f, const CutoffWindow& window) {
    SampledField w = sample_window(window, f.grid);
    for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] *= f.values[i];
    w.meta = f.meta.empty() ? "windowed" : f.meta + " (windowed)";
    return w;
}

}  // namespace mlwf
