#include "mlwf/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mlwf/detail/parallel.hpp"

namespace mlwf {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::regular: return "regular";
        case Verdict::singular: return "singular";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

double default_half_angle_deg(int dim) { return dim >= 3 ? 15.0 : (dim == 2 ? 10.0 : 45.0); }

namespace {

int default_k_max(int radius) {
    // Largest k with 2^(k+1) <= N_max.
    int k = -1;
    while ((2 << (k + 1)) <= radius) ++k;
    return k;
}

struct ShellPoint {
    int k;
    Point u;     // unit direction of n
    double mag;  // |a_n|
};

// Lattice points of the coefficient box grouped for repeated cone queries.
class ShellTable {
public:
    ShellTable(const CoeffArray& a, const FitOptions& o) : dim_(a.dim()) {
        k_min_ = o.k_min;
        k_max_ = o.k_max < 0 ? default_k_max(a.radius()) : o.k_max;
        if (k_min_ < 0) throw std::invalid_argument("k_min must be non-negative");
        if ((2 << k_max_) > a.radius())
            throw std::invalid_argument("shell k_max = " + std::to_string(k_max_) + " needs N_max >= " +
                                        std::to_string(2 << k_max_) + ", got " + std::to_string(a.radius()));
        if (k_max_ - k_min_ + 1 < 3)
            throw std::invalid_argument("fewer than three dyadic shells between k_min and k_max");
        floor_ = o.floor_rel * a.max_abs();
        const long long lo2 = 1LL << (2 * k_min_);
        const long long hi2 = 1LL << (2 * (k_max_ + 1));
        for (std::size_t i = 0; i < a.size(); ++i) {
            Index n = a.index(i);
            long long r2 = 0;
            for (int j = 0; j < dim_; ++j) r2 += static_cast<long long>(n[j]) * n[j];
            if (r2 < lo2 || r2 >= hi2) continue;
            int k = k_min_;
            while ((1LL << (2 * (k + 1))) <= r2) ++k;
            double r = std::sqrt(static_cast<double>(r2));
            Point u{};
            for (int j = 0; j < dim_; ++j) u[j] = n[j] / r;
            pts_.push_back({k, u, std::abs(a[i])});
        }
    }

    int k_min() const { return k_min_; }
    int k_max() const { return k_max_; }
    double floor() const { return floor_; }

    // Per-shell count, max and sum of squares inside the cone.
    void gather(const Cone& c, std::vector<ShellStat>& env, std::vector<ShellStat>& energy) const {
        const int ns = k_max_ - k_min_ + 1;
        env.assign(ns, {});
        energy.assign(ns, {});
        for (int s = 0; s < ns; ++s) env[s].k = energy[s].k = k_min_ + s;
        for (const ShellPoint& p : pts_) {
            if (!c.contains_direction(p.u)) continue;
            int s = p.k - k_min_;
            env[s].count++;
            energy[s].count++;
            env[s].value = std::max(env[s].value, p.mag);
            energy[s].value += p.mag * p.mag;
        }
    }

private:
    int dim_;
    int k_min_ = 0, k_max_ = 0;
    double floor_ = 0.0;
    std::vector<ShellPoint> pts_;
};

struct Line {
    double slope = 0, intercept = 0, rms = 0;
};

Line fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Line l;
    l.slope = sxy / sxx;
    l.intercept = my - l.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (l.intercept + l.slope * x[i]);
        ss += r * r;
    }
    l.rms = std::sqrt(ss / n);
    return l;
}

std::vector<ShellStat> nonempty(const std::vector<ShellStat>& s, int& skipped) {
    std::vector<ShellStat> out;
    for (const auto& x : s)
        if (x.count > 0) out.push_back(x);
    skipped = static_cast<int>(s.size() - out.size());
    if (out.size() < 3)
        throw std::invalid_argument("cone meets fewer than three nonempty shells; use a larger N_max or a wider cone");
    return out;
}

DecayEstimate decay_from(const std::vector<ShellStat>& env, double floor) {
    DecayEstimate d;
    d.shells = nonempty(env, d.skipped);
    std::vector<double> x, y;
    for (const auto& s : d.shells) {
        if (s.value <= floor) d.rapid = true;
        x.push_back(s.k);
        y.push_back(s.value > 0 ? std::log2(s.value) : 0.0);
    }
    if (d.rapid) {
        d.order = std::numeric_limits<double>::infinity();
        return d;
    }
    Line l = fit(x, y);
    d.order = -l.slope;
    d.log_constant = l.intercept * std::numbers::ln2;
    d.residual = l.rms;
    return d;
}

SobolevEstimate sobolev_from(const std::vector<ShellStat>& energy, double floor) {
    SobolevEstimate e;
    e.shells = nonempty(energy, e.skipped);
    std::vector<double> x, y;
    for (const auto& s : e.shells) {
        if (s.value <= s.count * floor * floor) e.rapid = true;
        x.push_back(s.k);
        y.push_back(s.value > 0 ? std::log2(s.value) : 0.0);
    }
    if (e.rapid) {
        e.rate = -std::numeric_limits<double>::infinity();
        e.critical = std::numeric_limits<double>::infinity();
        return e;
    }
    Line l = fit(x, y);
    e.rate = l.slope;
    e.critical = -l.slope / 2;
    e.residual = l.rms;
    return e;
}

Verdict decay_verdict(const DecayEstimate& d, const ScanParams& p) {
    if (d.rapid || d.order >= p.threshold) return Verdict::regular;
    if (d.residual > p.max_residual) return Verdict::inconclusive;
    return Verdict::singular;
}

Verdict sobolev_verdict(const SobolevEstimate& e, const ScanParams& p) {
    if (e.rapid) return Verdict::regular;
    if (e.residual > p.max_residual) return Verdict::inconclusive;
    if (std::fabs(p.order - e.critical) <= p.band) return Verdict::inconclusive;
    return p.order >= e.critical ? Verdict::singular : Verdict::regular;
}

ScanResult scan_impl(const CoeffArray& a, const CutoffWindow& window, const ScanParams& p, ScanKind kind,
                     bool threaded) {
    ScanResult r;
    r.kind = kind;
    r.dim = a.dim();
    r.x0 = window.center();
    r.window = window;
    r.params = p;
    if (r.params.half_angle_deg < 0) r.params.half_angle_deg = default_half_angle_deg(a.dim());
    r.n_max = a.radius();
    r.source = to_string(a.source());
    r.refinement = a.refinement;
    if (window.dim() != a.dim()) throw std::invalid_argument("window and coefficient dimensions differ");

    ShellTable table(a, r.params.fit);
    r.k_max = table.k_max();
    const double theta = r.params.half_angle_deg * std::numbers::pi / 180.0;
    std::vector<Point> dirs = r.params.axes.empty() ? direction_grid(a.dim(), r.params.directions) : r.params.axes;
    for (Point& u : dirs) {
        double n = 0.0;
        for (int j = 0; j < a.dim(); ++j) n += u[j] * u[j];
        if (!(n > 0.0)) throw std::invalid_argument("scan direction must be a nonzero vector");
        for (int j = 0; j < a.dim(); ++j) u[j] /= std::sqrt(n);
    }
    std::vector<double> fractions = {1.0};
    if (a.dim() > 1 && r.params.nested > 0.0 && r.params.nested < 1.0) fractions.push_back(r.params.nested);

    r.directions.resize(dirs.size());
    auto one = [&](std::size_t i) {
        DirectionResult& dr = r.directions[i];
        dr.direction = dirs[i];
        bool any_regular = false, all_singular = true, any_ok = false;
        for (double f : fractions) {
            ConeResult cr;
            cr.half_angle_deg = r.params.half_angle_deg * f;
            try {
                Cone c(a.dim(), dirs[i], theta * f);
                std::vector<ShellStat> env, energy;
                table.gather(c, env, energy);
                if (kind == ScanKind::wavefront) {
                    cr.decay = decay_from(env, table.floor());
                    cr.verdict = decay_verdict(*cr.decay, r.params);
                } else {
                    cr.sobolev = sobolev_from(energy, table.floor());
                    cr.verdict = sobolev_verdict(*cr.sobolev, r.params);
                }
                any_ok = true;
            } catch (const std::invalid_argument& e) {
                cr.error = e.what();
                cr.verdict = Verdict::inconclusive;
                if (dr.cones.empty()) dr.error = e.what();
            }
            any_regular = any_regular || cr.verdict == Verdict::regular;
            if (cr.error.empty()) all_singular = all_singular && cr.verdict == Verdict::singular;
            dr.cones.push_back(std::move(cr));
        }
        if (!dr.error.empty() || !any_ok)
            dr.verdict = Verdict::inconclusive;
        else if (any_regular)
            dr.verdict = Verdict::regular;
        else if (all_singular)
            dr.verdict = Verdict::singular;
        else
            dr.verdict = Verdict::inconclusive;
    };
    if (threaded)
        detail::parallel_for(dirs.size(), one);
    else
        for (std::size_t i = 0; i < dirs.size(); ++i) one(i);
    return r;
}

}  // namespace

std::vector<Point> ScanResult::singular() const {
    std::vector<Point> out;
    for (const auto& d : directions)
        if (d.verdict == Verdict::singular) out.push_back(d.direction);
    return out;
}

bool ScanResult::any_inconclusive() const {
    for (const auto& d : directions)
        if (d.verdict == Verdict::inconclusive) return true;
    return false;
}

DecayEstimate directional_decay(const CoeffArray& a, const Cone& cone, const FitOptions& o) {
    if (cone.dim() != a.dim()) throw std::invalid_argument("cone and coefficient dimensions differ");
    ShellTable t(a, o);
    std::vector<ShellStat> env, energy;
    t.gather(cone, env, energy);
    return decay_from(env, t.floor());
}

SobolevEstimate sobolev_order(const CoeffArray& a, const Cone& cone, const FitOptions& o) {
    if (cone.dim() != a.dim()) throw std::invalid_argument("cone and coefficient dimensions differ");
    ShellTable t(a, o);
    std::vector<ShellStat> env, energy;
    t.gather(cone, env, energy);
    return sobolev_from(energy, t.floor());
}

CoeffArray localized_coefficients(const ScanInput& in, const CutoffWindow& window, int n_max) {
    if (const auto* f = std::get_if<SampledField>(&in)) {
        if (f->grid.dim() != window.dim()) throw std::invalid_argument("field and window dimensions differ");
        if (2 * n_max >= f->grid.samples_per_axis())
            throw std::invalid_argument("coefficient starvation: N_max = " + std::to_string(n_max) + " needs M > " +
                                        std::to_string(2 * n_max) + " samples per axis, got " +
                                        std::to_string(f->grid.samples_per_axis()));
        bump_window(f->grid, window.center(), window.inner(), window.outer());
        return fourier_coefficients(periodize(*f, window), n_max);
    }
    if (const auto* t = std::get_if<TestDistribution>(&in)) return analytic_coeffs(*t, window, n_max);
    const auto& a = std::get<CoeffArray>(in);
    if (a.radius() < n_max)
        throw std::invalid_argument("coefficient starvation: input has N_max = " + std::to_string(a.radius()) +
                                    ", scan needs " + std::to_string(n_max));
    return a.radius() == n_max ? a : a.resized(n_max);
}

ScanResult wavefront_scan_coeffs(const CoeffArray& a, const CutoffWindow& w, const ScanParams& p) {
    return scan_impl(a, w, p, ScanKind::wavefront, true);
}

ScanResult sobolev_scan_coeffs(const CoeffArray& a, const CutoffWindow& w, const ScanParams& p) {
    return scan_impl(a, w, p, ScanKind::sobolev, true);
}

ScanResult wavefront_scan(const ScanInput& in, const CutoffWindow& w, int n_max, const ScanParams& p) {
    return wavefront_scan_coeffs(localized_coefficients(in, w, n_max), w, p);
}

ScanResult sobolev_scan(const ScanInput& in, const CutoffWindow& w, int n_max, const ScanParams& p) {
    return sobolev_scan_coeffs(localized_coefficients(in, w, n_max), w, p);
}

std::vector<MapEntry> full_wf_map(const ScanInput& in, int m, double inner, double outer, int n_max,
                                  const ScanParams& p) {
    int dim = 0;
    if (const auto* f = std::get_if<SampledField>(&in)) dim = f->grid.dim();
    else if (const auto* t = std::get_if<TestDistribution>(&in)) dim = t->dim;
    else throw std::invalid_argument("a map needs a field or a distribution, not localized coefficients");
    Grid base(dim, m);
    std::vector<MapEntry> out(base.size());
    detail::parallel_for(base.size(), [&](std::size_t i) {
        MapEntry& e = out[i];
        e.x = base.point(i);
        for (int j = 0; j < dim; ++j) e.x[j] += 0.5 / m;
        try {
            CutoffWindow w = bump_window(dim, e.x, inner, outer);
            e.scan = scan_impl(localized_coefficients(in, w, n_max), w, p, ScanKind::wavefront, false);
        } catch (const std::exception& ex) {
            e.scan.dim = dim;
            e.scan.x0 = e.x;
            e.scan.params = p;
            e.scan.error = ex.what();
        }
    });
    return out;
}

}  // namespace mlwf
