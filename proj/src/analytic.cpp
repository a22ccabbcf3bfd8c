// Coefficients of window * distribution by quadrature on the window support.
//
// The window is replaced by its single copy on R^d nearest the distribution's
// location; for 1-periodic distributions this changes nothing, for the edge
// and line kinds it is what makes the product compactly supported.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mlwf/coeffs.hpp"
#include "mlwf/detail/quadrature.hpp"

namespace mlwf {

namespace {

using std::numbers::pi;
using detail::Nodes;

struct AxisWindow {
    double c, in, out;
    const CutoffWindow* w;
    double operator()(double x) const { return w->radial(std::fabs(x - c)); }
    double lo() const { return c - out; }
    double hi() const { return c + out; }
};

AxisWindow axis_copy(const CutoffWindow& w, int axis, double anchor) {
    double c = w.center()[axis];
    c += std::round(anchor - c);
    return {c, w.inner(), w.outer(), &w};
}

// out[n - nlo] += sum_q coef_q exp(-2 pi i n x_q), n = nlo..nhi
void accumulate_exp(const std::vector<double>& x, const std::vector<double>& coef, int nlo, int nhi,
                    std::vector<cplx>& out) {
    const int len = nhi - nlo + 1;
    for (std::size_t q = 0; q < x.size(); ++q) {
        if (coef[q] == 0.0) continue;
        const cplx step = std::polar(1.0, -2 * pi * x[q]);
        cplx z;
        for (int i = 0; i < len; ++i) {
            if (i % 32 == 0) z = std::polar(1.0, -2 * pi * x[q] * (nlo + i));  // resync against drift
            out[i] += coef[q] * z;
            z *= step;
        }
    }
}

// Row q of the matrix exp(-2 pi i n x_q) * scale_q, n = -N..N, as split re/im arrays.
void exp_rows(const std::vector<double>& x, const std::vector<double>& scale, int N, std::vector<double>& re,
              std::vector<double>& im) {
    const int len = 2 * N + 1;
    re.assign(x.size() * len, 0.0);
    im.assign(x.size() * len, 0.0);
    for (std::size_t q = 0; q < x.size(); ++q) {
        const cplx step = std::polar(1.0, -2 * pi * x[q]);
        cplx z;
        for (int i = 0; i < len; ++i) {
            if (i % 32 == 0) z = std::polar(1.0, -2 * pi * x[q] * (i - N));
            re[q * len + i] = scale[q] * z.real();
            im[q * len + i] = scale[q] * z.imag();
            z *= step;
        }
    }
}

// A[i][j] = sum_q L[q][i] * R[q][j] for complex L, R stored as split arrays.
std::vector<cplx> gram(std::size_t Q, int len, const std::vector<double>& lre, const std::vector<double>& lim,
                       const std::vector<double>& rre, const std::vector<double>& rim) {
    std::vector<double> are(static_cast<std::size_t>(len) * len, 0.0), aim(are.size(), 0.0);
    for (std::size_t q = 0; q < Q; ++q) {
        const double* Lr = &lre[q * len];
        const double* Li = &lim[q * len];
        const double* Rr = &rre[q * len];
        const double* Ri = &rim[q * len];
        for (int i = 0; i < len; ++i) {
            const double a = Lr[i], b = Li[i];
            if (a == 0.0 && b == 0.0) continue;
            double* Ar = &are[static_cast<std::size_t>(i) * len];
            double* Ai = &aim[static_cast<std::size_t>(i) * len];
            for (int j = 0; j < len; ++j) {
                Ar[j] += a * Rr[j] - b * Ri[j];
                Ai[j] += a * Ri[j] + b * Rr[j];
            }
        }
    }
    std::vector<cplx> out(are.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = {are[k], aim[k]};
    return out;
}

template <class F>
std::vector<cplx> refine(F compute, int radius, const QuadratureOptions& o, int& used) {
    if (o.fixed_panels > 0) {
        used = o.fixed_panels;
        return compute(static_cast<double>(o.fixed_panels));
    }
    int p = std::max(o.min_panels, radius);
    std::vector<cplx> prev = compute(p);
    for (;;) {
        int p2 = 2 * p;
        if (p2 > o.max_panels)
            throw std::runtime_error("quadrature did not reach tolerance " + std::to_string(o.tolerance) +
                                     " within " + std::to_string(o.max_panels) + " panels per unit length");
        std::vector<cplx> cur = compute(p2);
        double diff = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i) diff = std::max(diff, std::abs(cur[i] - prev[i]));
        if (diff < o.tolerance) {
            used = p2;
            return cur;
        }
        prev = std::move(cur);
        p = p2;
    }
}

// int phi_axis(x) g(x) exp(-2 pi i n x) dx over [lo, hi] (inside the window copy),
// for n = nlo..nhi.
template <class G>
std::vector<cplx> window_integral(const AxisWindow& aw, double lo, double hi, std::vector<double> extra, G g,
                                  int nlo, int nhi, double density) {
    std::vector<cplx> out(nhi - nlo + 1);
    lo = std::max(lo, aw.lo());
    hi = std::min(hi, aw.hi());
    if (!(lo < hi)) return out;
    std::vector<double> br = {lo, hi};
    for (double b : {aw.c - aw.out, aw.c - aw.in, aw.c + aw.in, aw.c + aw.out})
        if (b > lo && b < hi) br.push_back(b);
    for (double b : extra)
        if (b > lo && b < hi) br.push_back(b);
    Nodes nd = detail::composite_gauss(br, density);
    std::vector<double> coef(nd.x.size());
    for (std::size_t q = 0; q < nd.x.size(); ++q) coef[q] = nd.w[q] * aw(nd.x[q]) * g(nd.x[q]);
    accumulate_exp(nd.x, coef, nlo, nhi, out);
    return out;
}

void check_point_singularity(const CutoffWindow& w, double s, const char* what) {
    double r = torus_distance(s, w.center()[0]);
    if (r > w.inner() && r < w.outer())
        throw std::invalid_argument(std::string(what) +
                                    " lies in the window transition band; move it into the plateau or outside the "
                                    "support");
}

double gaussian_periodic(double x, double c, double s) {
    double v = 0.0;
    double u = x - c;
    u -= std::floor(u);
    for (int k = -3; k <= 3; ++k) {
        double z = (u + k) / s;
        v += std::exp(-0.5 * z * z);
    }
    return v;
}

// Singular images of a 1-periodic function inside the window copy.
std::vector<double> images(double s, const AxisWindow& aw) {
    std::vector<double> out;
    for (int k = -2; k <= 2; ++k) {
        double x = s + std::round(aw.c - s) + k;
        if (x > aw.lo() && x < aw.hi()) out.push_back(x);
    }
    return out;
}

CoeffArray one_dim_periodic(const TestDistribution& t, const CutoffWindow& w, int N, const QuadratureOptions& o) {
    const double p = t.location[0];
    AxisWindow aw = axis_copy(w, 0, p);
    std::vector<double> sing = images(p, aw);
    for (double x : images(p + 0.5, aw)) sing.push_back(x);
    int used = 0;
    std::vector<cplx> v;
    if (t.kind == Kind::square_wave_1d) {
        check_point_singularity(w, p, "jump");
        check_point_singularity(w, p + 0.5, "jump");
        auto f = [p](double x) {
            double u = x - p;
            u -= std::floor(u);
            return u < 0.5 ? 1.0 : -1.0;
        };
        v = refine([&](double d) { return window_integral(aw, aw.lo(), aw.hi(), sing, f, -N, N, d); }, N, o, used);
    } else {
        check_point_singularity(w, p, "kink");
        check_point_singularity(w, p + 0.5, "kink");
        auto f = [p](double x) { return torus_distance(x, p); };
        v = refine([&](double d) { return window_integral(aw, aw.lo(), aw.hi(), sing, f, -N, N, d); }, N, o, used);
    }
    CoeffArray a(1, N, CoeffArray::Source::analytic);
    a.values() = std::move(v);
    a.refinement = used;
    return a;
}

// Coefficients of a product of per-axis factors.
CoeffArray tensor(int dim, int N, const std::vector<std::vector<cplx>>& f) {
    CoeffArray a(dim, N, CoeffArray::Source::analytic);
    for (std::size_t i = 0; i < a.size(); ++i) {
        Index n = a.index(i);
        cplx v = 1.0;
        for (int j = 0; j < dim; ++j) v *= f[j][n[j] + N];
        a[i] = v;
    }
    return a;
}

CoeffArray gaussian(const TestDistribution& t, const CutoffWindow& w, int N, const QuadratureOptions& o) {
    std::vector<std::vector<cplx>> f(t.dim);
    int used = 0;
    for (int j = 0; j < t.dim; ++j) {
        AxisWindow aw = axis_copy(w, j, t.location[j]);
        double c = t.location[j], s = t.width;
        auto g = [c, s](double x) { return gaussian_periodic(x, c, s); };
        f[j] = refine([&](double d) { return window_integral(aw, aw.lo(), aw.hi(), {}, g, -N, N, d); }, N, o, used);
    }
    CoeffArray a = tensor(t.dim, N, f);
    a.refinement = used;
    return a;
}

CoeffArray plane_wave(const TestDistribution& t, const CutoffWindow& w, int N, const QuadratureOptions& o) {
    std::vector<std::vector<cplx>> f(t.dim);
    int used = 0;
    for (int j = 0; j < t.dim; ++j) {
        AxisWindow aw = axis_copy(w, j, w.center()[j]);
        int k = t.wave[j];
        auto one = [](double) { return 1.0; };
        f[j] = refine([&](double d) { return window_integral(aw, aw.lo(), aw.hi(), {}, one, -N - k, N - k, d); },
                      N + std::abs(k), o, used);
    }
    CoeffArray a = tensor(t.dim, N, f);
    a.refinement = used;
    return a;
}

CoeffArray delta(const TestDistribution& t, const CutoffWindow& w, int N) {
    Point p = t.location;
    if (!w.in_plateau(p) && !w.outside_support(p))
        throw std::invalid_argument(
            "delta lies in the window transition band; move it into the plateau or outside the support");
    TestDistribution pure = t;
    CoeffArray a = exact_coeffs(pure, N);
    double phi = w(p);
    for (auto& z : a.values()) z *= phi;
    return a;
}

Point unit_normal(const TestDistribution& t) {
    double n = std::hypot(t.normal[0], t.normal[1]);
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("edge normal must be a nonzero vector");
    return {t.normal[0] / n, t.normal[1] / n, 0.0};
}

CoeffArray halfplane(const TestDistribution& t, const CutoffWindow& w, int N, const QuadratureOptions& o) {
    const Point nu = unit_normal(t);
    const Point& p = t.location;
    const int a = std::fabs(nu[0]) >= std::fabs(nu[1]) ? 0 : 1;
    const int b = 1 - a;
    AxisWindow wa = axis_copy(w, a, p[a]);
    AxisWindow wb = axis_copy(w, b, p[b]);
    const int len = 2 * N + 1;
    int used = 0;
    auto one = [](double) { return 1.0; };
    std::vector<cplx> out;

    if (nu[b] == 0.0) {
        // Edge along a coordinate axis: the integral factorises.
        std::vector<cplx> fa = refine(
            [&](double d) {
                return nu[a] > 0 ? window_integral(wa, p[a], wa.hi(), {}, one, -N, N, d)
                                 : window_integral(wa, wa.lo(), p[a], {}, one, -N, N, d);
            },
            N, o, used);
        int used_b = 0;
        std::vector<cplx> fb =
            refine([&](double d) { return window_integral(wb, wb.lo(), wb.hi(), {}, one, -N, N, d); }, N, o, used_b);
        used = std::max(used, used_b);
        std::vector<std::vector<cplx>> f(2);
        f[a] = fa;
        f[b] = fb;
        CoeffArray r = tensor(2, N, f);
        r.refinement = used;
        return r;
    }

    // General normal: for each outer node x_b the inner integral over x_a runs
    // from the edge u(x_b) to the end of the window copy; inner integrals are
    // assembled from one cumulative sweep.
    const double slope = nu[b] / nu[a];
    auto u_of = [&](double xb) { return p[a] - slope * (xb - p[b]); };
    auto compute = [&](double density) {
        std::vector<double> br = {wb.lo(), wb.c - wb.in, wb.c + wb.in, wb.hi()};
        for (double tt : {wa.lo(), wa.c - wa.in, wa.c + wa.in, wa.hi()}) {
            double xb = p[b] - (tt - p[a]) / slope;
            if (xb > wb.lo() && xb < wb.hi()) br.push_back(xb);
        }
        Nodes outer = detail::composite_gauss(br, density);
        const std::size_t Q = outer.x.size();
        std::vector<double> scale(Q);
        for (std::size_t q = 0; q < Q; ++q) scale[q] = outer.w[q] * wb(outer.x[q]);
        std::vector<double> hre, him;
        exp_rows(outer.x, scale, N, hre, him);

        std::vector<double> u(Q);
        for (std::size_t q = 0; q < Q; ++q) u[q] = std::clamp(u_of(outer.x[q]), wa.lo(), wa.hi());
        std::vector<double> cuts = {wa.lo(), wa.c - wa.in, wa.c + wa.in, wa.hi()};
        cuts.insert(cuts.end(), u.begin(), u.end());
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::vector<double> pieces;
        const double hmax = 1.0 / density;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            pieces.push_back(cuts[k]);
            int sub = static_cast<int>(std::ceil((cuts[k + 1] - cuts[k]) / hmax));
            for (int s = 1; s < sub; ++s) pieces.push_back(cuts[k] + (cuts[k + 1] - cuts[k]) * s / sub);
        }
        pieces.push_back(cuts.back());

        // Sweep from the far end of the region towards the edge.
        std::vector<std::size_t> order(Q);
        for (std::size_t q = 0; q < Q; ++q) order[q] = q;
        const bool upper = nu[a] > 0;
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            return upper ? (u[i] > u[j] || (u[i] == u[j] && i < j)) : (u[i] < u[j] || (u[i] == u[j] && i < j));
        });
        std::vector<cplx> run(len);
        std::vector<double> gre(Q * len), gim(Q * len);
        std::ptrdiff_t k = upper ? static_cast<std::ptrdiff_t>(pieces.size()) - 2 : 0;
        auto add_piece = [&](std::size_t idx) {
            Nodes nd;
            detail::gauss_panel(pieces[idx], pieces[idx + 1], nd);
            std::vector<double> coef(nd.x.size());
            for (std::size_t i = 0; i < nd.x.size(); ++i) coef[i] = nd.w[i] * wa(nd.x[i]);
            accumulate_exp(nd.x, coef, -N, N, run);
        };
        for (std::size_t q : order) {
            if (upper) {
                while (k >= 0 && pieces[k] >= u[q]) add_piece(static_cast<std::size_t>(k--));
            } else {
                while (k + 1 < static_cast<std::ptrdiff_t>(pieces.size()) && pieces[k + 1] <= u[q])
                    add_piece(static_cast<std::size_t>(k++));
            }
            for (int i = 0; i < len; ++i) {
                gre[q * len + i] = run[i].real();
                gim[q * len + i] = run[i].imag();
            }
        }
        std::vector<cplx> A = gram(Q, len, gre, gim, hre, him);  // A[n_a][n_b]
        if (a == 1) {
            std::vector<cplx> T(A.size());
            for (int i = 0; i < len; ++i)
                for (int j = 0; j < len; ++j) T[static_cast<std::size_t>(j) * len + i] = A[static_cast<std::size_t>(i) * len + j];
            A.swap(T);
        }
        return A;
    };
    out = refine(compute, N, o, used);
    CoeffArray r(2, N, CoeffArray::Source::analytic);
    r.values() = std::move(out);
    r.refinement = used;
    return r;
}

CoeffArray line_delta(const TestDistribution& t, const CutoffWindow& w, int N, const QuadratureOptions& o) {
    const Point nu = unit_normal(t);
    const Point& p = t.location;
    AxisWindow ax[2] = {axis_copy(w, 0, p[0]), axis_copy(w, 1, p[1])};
    const double tau[2] = {-nu[1], nu[0]};
    const int len = 2 * N + 1;
    int used = 0;

    // Arclength interval where the line meets the window copy, and the
    // parameters where it crosses plateau boundaries.
    double slo = -1e300, shi = 1e300;
    std::vector<double> br;
    double constant = 1.0;
    for (int j = 0; j < 2; ++j) {
        if (tau[j] == 0.0) {
            constant *= ax[j](p[j]);
            continue;
        }
        double s1 = (ax[j].lo() - p[j]) / tau[j], s2 = (ax[j].hi() - p[j]) / tau[j];
        slo = std::max(slo, std::min(s1, s2));
        shi = std::min(shi, std::max(s1, s2));
        for (double e : {ax[j].c - ax[j].in, ax[j].c + ax[j].in}) br.push_back((e - p[j]) / tau[j]);
    }
    CoeffArray r(2, N, CoeffArray::Source::analytic);
    if (constant == 0.0 || !(slo < shi)) return r;
    std::vector<double> pts = {slo, shi};
    for (double s : br)
        if (s > slo && s < shi) pts.push_back(s);

    auto compute = [&](double density) {
        Nodes nd = detail::composite_gauss(pts, density);
        const std::size_t Q = nd.x.size();
        std::vector<double> x0(Q), x1(Q), sc(Q), ones(Q, 1.0);
        for (std::size_t q = 0; q < Q; ++q) {
            x0[q] = p[0] + nd.x[q] * tau[0];
            x1[q] = p[1] + nd.x[q] * tau[1];
            sc[q] = nd.w[q] * constant * (tau[0] != 0.0 ? ax[0](x0[q]) : 1.0) * (tau[1] != 0.0 ? ax[1](x1[q]) : 1.0);
        }
        std::vector<double> lre, lim, rre, rim;
        exp_rows(x0, sc, N, lre, lim);
        exp_rows(x1, ones, N, rre, rim);
        return gram(Q, len, lre, lim, rre, rim);
    };
    r.values() = refine(compute, N, o, used);
    r.refinement = used;
    return r;
}

}  // namespace

CoeffArray analytic_coeffs(const TestDistribution& t, const CutoffWindow& w, int radius, const QuadratureOptions& o) {
    if (w.dim() != t.dim) throw std::invalid_argument("window and distribution dimensions differ");
    if (radius < 0) throw std::invalid_argument("coefficient radius must be non-negative");
    if ((t.kind == Kind::square_wave_1d || t.kind == Kind::kink_1d) && t.dim != 1)
        throw std::invalid_argument(std::string(to_string(t.kind)) + " is one-dimensional");
    if ((t.kind == Kind::halfplane_edge_2d || t.kind == Kind::line_delta_2d) && t.dim != 2)
        throw std::invalid_argument(std::string(to_string(t.kind)) + " is two-dimensional");
    switch (t.kind) {
        case Kind::delta: return delta(t, w, radius);
        case Kind::square_wave_1d:
        case Kind::kink_1d: return one_dim_periodic(t, w, radius, o);
        case Kind::gaussian:
            if (!(t.width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
            return gaussian(t, w, radius, o);
        case Kind::plane_wave: return plane_wave(t, w, radius, o);
        case Kind::halfplane_edge_2d: return halfplane(t, w, radius, o);
        case Kind::line_delta_2d: return line_delta(t, w, radius, o);
    }
    throw std::invalid_argument("unknown distribution kind");
}

}  // namespace mlwf
