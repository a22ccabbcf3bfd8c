#include "mlwf/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mlwf/algebra.hpp"

namespace mlwf {

Weight Weight::polynomial(double s) {
    if (!std::isfinite(s)) throw std::invalid_argument("weight exponent must be finite");
    Weight w;
    w.polynomial_ = true;
    w.s_ = s;
    char buf[48];
    std::snprintf(buf, sizeof buf, "<n>^%g", s);
    w.label_ = buf;
    return w;
}

Weight Weight::tabulated(int dim, int radius, std::vector<double> values, std::string label) {
    Weight w;
    w.polynomial_ = false;
    w.dim_ = dim;
    w.radius_ = radius;
    CoeffArray shape(dim, radius);
    if (values.size() != shape.size()) throw std::invalid_argument("weight table does not match its box");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("weights must be positive and finite");
    w.table_ = std::move(values);
    w.label_ = std::move(label);
    return w;
}

Weight Weight::tabulate(int dim, int radius, const std::function<double(const Index&)>& fn, std::string label) {
    CoeffArray shape(dim, radius);
    std::vector<double> v(shape.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(shape.index(i));
    return tabulated(dim, radius, std::move(v), std::move(label));
}

double Weight::operator()(const Index& n, int dim) const {
    if (polynomial_) {
        double r2 = 0.0;
        for (int j = 0; j < dim; ++j) r2 += static_cast<double>(n[j]) * n[j];
        return std::pow(1.0 + r2, 0.5 * s_);
    }
    if (dim != dim_) throw std::invalid_argument("weight table dimension mismatch");
    std::size_t f = 0;
    const int side = 2 * radius_ + 1;
    for (int j = 0; j < dim; ++j) {
        if (n[j] < -radius_ || n[j] > radius_) throw std::out_of_range("index outside the weight table");
        f = f * side + static_cast<std::size_t>(n[j] + radius_);
    }
    return table_[f];
}

namespace {

void check_q(double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("exponent q must be >= 1 (or inf)");
}

// Weight values on the whole box of `a`; polynomial weights go through a table
// indexed by |n|^2 so pow is evaluated once per radius.
std::vector<double> weight_on_box(const Weight& w, int dim, int radius) {
    CoeffArray shape(dim, radius);
    std::vector<double> out(shape.size());
    if (w.is_polynomial()) {
        std::vector<double> by_r2(static_cast<std::size_t>(dim) * radius * radius + 1);
        for (std::size_t r2 = 0; r2 < by_r2.size(); ++r2)
            by_r2[r2] = std::pow(1.0 + static_cast<double>(r2), 0.5 * w.exponent());
        for (std::size_t i = 0; i < out.size(); ++i) {
            Index n = shape.index(i);
            std::size_t r2 = 0;
            for (int j = 0; j < dim; ++j) r2 += static_cast<std::size_t>(n[j] * n[j]);
            out[i] = by_r2[r2];
        }
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = w(shape.index(i), dim);
    }
    return out;
}

}  // namespace

double weighted_norm(const CoeffArray& a, const Weight& w, double q) {
    check_q(q);
    std::vector<double> wv = weight_on_box(w, a.dim(), a.radius());
    if (std::isinf(q)) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, wv[i] * std::abs(a[i]));
        return m;
    }
    // Scale by the largest term to keep the power sum in range.
    double big = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) big = std::max(big, wv[i] * std::abs(a[i]));
    if (big == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(wv[i] * std::abs(a[i]) / big, q);
    return big * std::pow(s, 1.0 / q);
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::convergent: return "convergent";
        case Membership::divergent: return "divergent";
        case Membership::inconclusive: return "inconclusive";
    }
    return "?";
}

MembershipReport membership_estimate(const std::function<CoeffArray(int)>& source, const Weight& w, double q,
                                     std::vector<int> levels) {
    check_q(q);
    if (levels.size() < 3) throw std::invalid_argument("membership needs at least three truncation levels");
    if (!std::is_sorted(levels.begin(), levels.end()))
        throw std::invalid_argument("membership truncation levels must increase");
    MembershipReport r;
    r.levels = levels;
    for (int N : levels) {
        CoeffArray a = source(N);
        if (a.radius() < N) throw std::invalid_argument("coefficient source returned a box smaller than requested");
        if (a.radius() > N) a = a.resized(N);
        double nrm = weighted_norm(a, w, q);
        r.norms.push_back(nrm);
        r.sums.push_back(std::isinf(q) ? nrm : std::pow(nrm, q));
    }
    const std::size_t k = levels.size();
    double last = r.norms[k - 1], prev = r.norms[k - 2];
    double rel = last > 0 ? (last - prev) / last : 0.0;
    bool nondecreasing = true;
    for (std::size_t i = 2; i < k; ++i) {
        double d1 = r.sums[i - 1] - r.sums[i - 2], d2 = r.sums[i] - r.sums[i - 1];
        if (!(d2 >= d1) || d2 <= 0.0) nondecreasing = false;
    }
    if (rel < 1e-3)
        r.verdict = Membership::convergent;
    else if (nondecreasing)
        r.verdict = Membership::divergent;
    else
        r.verdict = Membership::inconclusive;
    return r;
}

cplx dual_pairing(const CoeffArray& f, const CoeffArray& phi) {
    if (f.dim() != phi.dim()) throw std::invalid_argument("pairing dimension mismatch");
    CoeffArray a = f.resized(std::min(f.radius(), phi.radius()));
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Index n = a.index(i), m{};
        for (int j = 0; j < a.dim(); ++j) m[j] = -n[j];
        s += a[i] * phi.at(m);
    }
    return s;
}

ModerateReport is_nu_moderate(const Weight& w, const Weight& nu, int radius, int dim) {
    if (radius < 1) throw std::invalid_argument("moderate check radius must be positive");
    if (2 * radius > w.radius() || radius > nu.radius())
        throw std::invalid_argument("weight tables do not cover the requested radius");
    ModerateReport r;
    r.radius = radius;
    r.constant = moderate_constant(w, nu, radius, dim);
    r.half_constant = moderate_constant(w, nu, std::max(1, radius / 2), dim);
    r.stable = r.constant <= 1.05 * r.half_constant;
    return r;
}

double moderate_constant(const Weight& w, const Weight& nu, int R, int dim) {
    const int S = 4 * R + 1;
    std::vector<double> w2 = weight_on_box(w, dim, 2 * R);
    std::vector<double> w1 = weight_on_box(w, dim, R);
    std::vector<double> v1 = weight_on_box(nu, dim, R);
    CoeffArray box(dim, R);
    // Flat index of m + n in the doubled box is a sum of per-vector offsets.
    std::vector<std::size_t> off(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
        Index n = box.index(i);
        std::size_t f = 0;
        for (int j = 0; j < dim; ++j) f = f * S + static_cast<std::size_t>(n[j] + R);
        off[i] = f;
    }
    std::vector<double> inv_nu(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) inv_nu[i] = 1.0 / v1[i];
    double best = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i) {
        const double* base = w2.data() + off[i];
        double m = 0.0;
        for (std::size_t k = 0; k < box.size(); ++k) m = std::max(m, base[off[k]] * inv_nu[k]);
        best = std::max(best, m / w1[i]);
    }
    return best;
}

CoeffArray window_coefficients(const CutoffWindow& window, const Grid& grid, double tail) {
    int rmax = grid.samples_per_axis() / 2 - 1;
    CoeffArray c = fourier_coefficients(sample_window(window, grid), rmax);
    // l1 mass outside each box radius
    std::vector<double> shell(rmax + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Index n = c.index(i);
        int r = 0;
        for (int j = 0; j < c.dim(); ++j) r = std::max(r, std::abs(n[j]));
        shell[r] += std::abs(c[i]);
    }
    double outside = 0.0;
    int b = rmax;
    for (int r = rmax; r >= 0; --r) {
        if (outside + shell[r] > tail) break;
        outside += shell[r];
        b = r - 1;
    }
    b = std::max(b, 0);
    return c.resized(b);
}

CoeffArray localize(const CoeffArray& f, const CutoffWindow& window, const Grid& grid, int out_radius) {
    if (f.dim() != window.dim()) throw std::invalid_argument("coefficients and window dimensions differ");
    CoeffArray phi = window_coefficients(window, grid);
    int need = out_radius + phi.radius();
    if (f.radius() < need)
        throw std::invalid_argument("coefficient starvation: localizing to radius " + std::to_string(out_radius) +
                                    " needs N_max >= " + std::to_string(need) + ", got " +
                                    std::to_string(f.radius()));
    return coeff_convolution(f, phi, out_radius).product;
}

}  // namespace mlwf
