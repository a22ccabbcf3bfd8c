#include "mlwf/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mlwf/detail/fft.hpp"

namespace mlwf {

namespace {

constexpr int kDirectLimit = 64;

void same_dim(const CoeffArray& a, const CoeffArray& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("convolution operands have different dimensions");
}

CoeffArray direct(const CoeffArray& f1, const CoeffArray& f2, int out) {
    CoeffArray c(f1.dim(), out);
    const int d = f1.dim();
    for (std::size_t i = 0; i < c.size(); ++i) {
        Index n = c.index(i);
        cplx s = 0.0;
        for (std::size_t k = 0; k < f2.size(); ++k) {
            if (f2[k] == cplx{}) continue;
            Index j = f2.index(k), m{};
            for (int t = 0; t < d; ++t) m[t] = n[t] - j[t];
            if (f1.contains(m)) s += f1.at(m) * f2[k];
        }
        c[i] = s;
    }
    return c;
}

CoeffArray via_fft(const CoeffArray& f1, const CoeffArray& f2, int out) {
    const int d = f1.dim();
    const int r1 = f1.radius(), r2 = f2.radius();
    const int L = 2 * (r1 + r2) + 1;  // length of the full linear convolution
    std::size_t total = 1;
    for (int j = 0; j < d; ++j) total *= static_cast<std::size_t>(L);
    auto place = [&](const CoeffArray& a, int r) {
        std::vector<cplx> buf(total);
        for (std::size_t i = 0; i < a.size(); ++i) {
            Index n = a.index(i);
            std::size_t f = 0;
            for (int j = 0; j < d; ++j) f = f * L + static_cast<std::size_t>(n[j] + r);
            buf[f] = a[i];
        }
        detail::fft_cube(buf, d, L, -1);
        return buf;
    };
    std::vector<cplx> A = place(f1, r1), B = place(f2, r2);
    for (std::size_t i = 0; i < total; ++i) A[i] *= B[i];
    detail::fft_cube(A, d, L, +1);
    const double scale = 1.0 / static_cast<double>(total);
    CoeffArray c(d, out);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Index n = c.index(i);
        std::size_t f = 0;
        bool inside = true;
        for (int j = 0; j < d; ++j) {
            int k = n[j] + r1 + r2;
            if (k < 0 || k >= L) inside = false;
            f = f * L + static_cast<std::size_t>(std::clamp(k, 0, L - 1));
        }
        c[i] = inside ? A[f] * scale : cplx{};
    }
    return c;
}

// Sum of |a| over boxes via a d-dimensional prefix table (padded to 3-D).
class BoxSum {
public:
    explicit BoxSum(const CoeffArray& a) : d_(a.dim()), r_(a.radius()) {
        s_ = a.side() + 1;
        const int s1 = s_, s2 = d_ >= 2 ? s_ : 2, s3 = d_ >= 3 ? s_ : 2;
        dims_ = {s1, s2, s3};
        p_.assign(static_cast<std::size_t>(s1) * s2 * s3, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            Index n = a.index(i);
            int x = n[0] + r_ + 1, y = d_ >= 2 ? n[1] + r_ + 1 : 1, z = d_ >= 3 ? n[2] + r_ + 1 : 1;
            at(x, y, z) = std::abs(a[i]);
        }
        for (int x = 1; x < s1; ++x)
            for (int y = 1; y < s2; ++y)
                for (int z = 1; z < s3; ++z)
                    at(x, y, z) += at(x - 1, y, z) + at(x, y - 1, z) + at(x, y, z - 1) - at(x - 1, y - 1, z) -
                                   at(x - 1, y, z - 1) - at(x, y - 1, z - 1) + at(x - 1, y - 1, z - 1);
    }
    // Sum over lo[j] <= n_j <= hi[j] (clipped to the box).
    double sum(Index lo, Index hi) const {
        int a[3], b[3];
        for (int j = 0; j < 3; ++j) {
            if (j < d_) {
                a[j] = std::max(lo[j], -r_) + r_;
                b[j] = std::min(hi[j], r_) + r_ + 1;
                if (a[j] >= b[j]) return 0.0;
            } else {
                a[j] = 0;
                b[j] = 1;
            }
        }
        auto P = [&](int x, int y, int z) { return p_[idx(x, y, z)]; };
        double v = P(b[0], b[1], b[2]) - P(a[0], b[1], b[2]) - P(b[0], a[1], b[2]) - P(b[0], b[1], a[2]) +
                   P(a[0], a[1], b[2]) + P(a[0], b[1], a[2]) + P(b[0], a[1], a[2]) - P(a[0], a[1], a[2]);
        return std::max(v, 0.0);
    }

private:
    std::size_t idx(int x, int y, int z) const {
        return (static_cast<std::size_t>(x) * dims_[1] + y) * dims_[2] + z;
    }
    double& at(int x, int y, int z) { return p_[idx(x, y, z)]; }
    int d_, r_, s_;
    std::array<int, 3> dims_{};
    std::vector<double> p_;
};

CoeffArray convolve(const CoeffArray& f1, const CoeffArray& f2, int out, ConvolutionMethod m) {
    same_dim(f1, f2);
    if (out < 0) throw std::invalid_argument("output radius must be non-negative");
    if (m == ConvolutionMethod::automatic)
        m = (f1.side() < kDirectLimit && f2.side() < kDirectLimit) ? ConvolutionMethod::direct
                                                                    : ConvolutionMethod::fft;
    return m == ConvolutionMethod::direct ? direct(f1, f2, out) : via_fft(f1, f2, out);
}

}  // namespace

ConvolutionResult coeff_convolution(const CoeffArray& f1, const CoeffArray& f2, int out, ConvolutionMethod m) {
    ConvolutionResult r;
    r.product = convolve(f1, f2, out, m);
    const double sup1 = f1.max_abs();
    BoxSum bs(f2);
    const double total2 = bs.sum({-f2.radius(), -f2.radius(), -f2.radius()}, {f2.radius(), f2.radius(), f2.radius()});
    const int d = f1.dim();
    r.tail_bound.resize(r.product.size());
    r.flagged.resize(r.product.size());
    int first_bad = out + 1;
    for (std::size_t i = 0; i < r.product.size(); ++i) {
        Index n = r.product.index(i), lo{}, hi{};
        for (int j = 0; j < d; ++j) {
            lo[j] = n[j] - f1.radius();
            hi[j] = n[j] + f1.radius();
        }
        double inside = bs.sum(lo, hi);
        double t = sup1 * std::max(0.0, total2 - inside);
        r.tail_bound[i] = t;
        r.flagged[i] = t > kTailFlag;
        if (r.flagged[i]) {
            int rad = 0;
            for (int j = 0; j < d; ++j) rad = std::max(rad, std::abs(n[j]));
            first_bad = std::min(first_bad, rad);
        }
    }
    r.reliable_radius = first_bad - 1;
    return r;
}

CoeffArray full_convolution(const CoeffArray& f1, const CoeffArray& f2, ConvolutionMethod m) {
    same_dim(f1, f2);
    return convolve(f1, f2, f1.radius() + f2.radius(), m);
}

double young_exponent(double q1, double q2) {
    if (!(q1 >= 1.0) || !(q2 >= 1.0)) throw std::invalid_argument("Young exponents must be >= 1");
    double inv = 1.0 / q1 + 1.0 / q2 - 1.0;
    if (inv < -1e-15)
        throw std::invalid_argument("no q >= 1 solves 1/q = 1/q1 + 1/q2 - 1 for these exponents");
    if (inv <= 1e-15) return kInf;
    return 1.0 / inv;
}

YoungReport young_bound_check(const CoeffArray& f1, const CoeffArray& f2, const Weight& w, const Weight& nu,
                              double q1, double q2) {
    same_dim(f1, f2);
    YoungReport r;
    r.q1 = q1;
    r.q2 = q2;
    r.q = young_exponent(q1, q2);
    // The constant over a larger box still bounds the support; tiny boxes are
    // too short to tell a converging constant from a growing one.
    constexpr int kMinCheckRadius = 32;
    int R = std::max({f1.radius(), f2.radius(), kMinCheckRadius});
    R = std::max(std::min(R, std::min(w.radius() / 2, nu.radius())), std::max(f1.radius(), f2.radius()));
    ModerateReport mod = is_nu_moderate(w, nu, R, f1.dim());
    if (!mod.stable)
        throw std::invalid_argument("weight " + w.label() + " is not moderate with respect to " + nu.label() +
                                    " on the coefficient support");
    r.constant = mod.constant;
    r.lhs = weighted_norm(full_convolution(f1, f2), w, r.q);
    r.norm1 = weighted_norm(f1, w, q1);
    r.norm2 = weighted_norm(f2, nu, q2);
    r.rhs = r.constant * r.norm1 * r.norm2;
    r.holds = r.lhs <= r.rhs * (1.0 + 1e-12);
    return r;
}

ProductWeights sobolev_product_weights(double s1, double s2, double s) {
    if (s1 + s2 < 0.0)
        throw std::invalid_argument("product needs s1 + s2 >= 0 (got " + std::to_string(s1 + s2) + ")");
    if (s > std::min(s1, s2))
        throw std::invalid_argument("product order s must not exceed min(s1, s2)");
    return {Weight::polynomial(std::min(s1, s2)), Weight::polynomial(std::max(s1, s2))};
}

LocalizationReport localization_bound_check(const CoeffArray& f, const CutoffWindow& window, const Grid& grid,
                                            const Weight& w, const Weight& nu, double q) {
    if (f.dim() != window.dim()) throw std::invalid_argument("coefficients and window dimensions differ");
    CoeffArray phi = window_coefficients(window, grid);
    LocalizationReport r;
    r.lhs = weighted_norm(full_convolution(f, phi), w, q);
    r.window_norm = weighted_norm(phi, nu, 1.0);
    r.norm = weighted_norm(f, w, q);
    r.constant = moderate_constant(w, nu, std::max(f.radius(), phi.radius()), f.dim());
    r.rhs = r.constant * r.window_norm * r.norm;
    r.holds = r.lhs <= r.rhs * (1.0 + 1e-12);
    return r;
}

ProductReport local_product(const LocalFactor& f1, const LocalFactor& f2, const CutoffWindow& window, int radius,
                            int input_radius) {
    if (input_radius <= 0) input_radius = radius;
    auto coeffs = [&](const LocalFactor& f) {
        if (f.dist) return analytic_coeffs(*f.dist, window, input_radius);
        if (f.coeffs) {
            if (f.coeffs->dim() != window.dim()) throw std::invalid_argument("factor and window dimensions differ");
            return *f.coeffs;
        }
        throw std::invalid_argument("product factor has neither a distribution nor coefficients");
    };
    ProductReport r;
    r.f1 = coeffs(f1);
    r.f2 = coeffs(f2);
    r.conv = coeff_convolution(r.f1, r.f2, radius);
    return r;
}

}  // namespace mlwf
