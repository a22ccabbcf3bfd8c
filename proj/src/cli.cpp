#include "mlwf/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "mlwf/field_io.hpp"

namespace mlwf {

namespace {

Point to_point(const std::vector<double>& v, int dim, const char* what) {
    if (static_cast<int>(v.size()) != dim)
        throw std::invalid_argument(std::string(what) + " needs " + std::to_string(dim) + " components");
    Point p{};
    for (int j = 0; j < dim; ++j) p[j] = v[j];
    return p;
}

Point default_point(int dim) {
    Point p{};
    for (int j = 0; j < dim; ++j) p[j] = 0.5;
    return p;
}

TestDistribution make_dist(const RunConfig& c, const std::string& kind) {
    TestDistribution t;
    t.kind = kind_from_string(kind);
    t.dim = c.dim;
    t.location = c.location.empty() ? default_point(c.dim) : to_point(c.location, c.dim, "--location");
    if (c.dim == 2) t.normal = to_point(c.normal, 2, "--normal");
    t.width = c.width;
    if (!c.wave.empty()) {
        if (static_cast<int>(c.wave.size()) != c.dim) throw std::invalid_argument("--wave needs one integer per axis");
        for (int j = 0; j < c.dim; ++j) t.wave[j] = c.wave[j];
    }
    return t;
}

bool has_input(const RunConfig& c) { return !c.input.empty(); }

int input_dim(const RunConfig& c, const SampledField* f) { return f ? f->grid.dim() : c.dim; }

void emit(const RunConfig& c, const Json& result, std::ostream& out) {
    Json j;
    j["config"] = to_json(c);
    j["result"] = result;
    std::string text = dump(j);
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write report " + c.out);
    f << text;
}

Weight weight(double s) { return Weight::polynomial(s); }

int analyze(const RunConfig& c, std::ostream& out, ScanKind kind) {
    if (!has_input(c) && c.kind.empty()) throw std::invalid_argument("analyze needs --input or --kind");
    std::optional<SampledField> field;
    if (has_input(c)) field = read_field(c.input);
    const int dim = input_dim(c, field ? &*field : nullptr);
    ScanInput in = field ? ScanInput(*field) : ScanInput(make_dist(c, c.kind));

    if (c.map_points > 0) {
        if (kind != ScanKind::wavefront) throw std::invalid_argument("maps are only available for wave-front scans");
        ScanParams sp = c.scan;
        if (!c.axis.empty()) sp.axes = {to_point(c.axis, dim, "--axis")};
        std::vector<MapEntry> map = full_wf_map(in, c.map_points, c.inner, c.outer, c.n_max, sp);
        emit(c, to_json(map), out);
        bool inconclusive = false;
        for (const auto& e : map) inconclusive = inconclusive || !e.scan.error.empty() || e.scan.any_inconclusive();
        return inconclusive ? 2 : 0;
    }
    Point x0;
    if (!c.x0.empty())
        x0 = to_point(c.x0, dim, "--x0");
    else if (!field)
        x0 = std::get<TestDistribution>(in).location;
    else
        x0 = default_point(dim);
    CutoffWindow w = field ? bump_window(field->grid, x0, c.inner, c.outer) : bump_window(dim, x0, c.inner, c.outer);
    ScanParams sp = c.scan;
    if (!c.axis.empty()) sp.axes = {to_point(c.axis, dim, "--axis")};
    ScanResult r = kind == ScanKind::wavefront ? wavefront_scan(in, w, c.n_max, sp) : sobolev_scan(in, w, c.n_max, sp);
    emit(c, to_json(r), out);
    if (!c.csv.empty()) {
        std::ofstream f(c.csv);
        if (!f) throw std::runtime_error("cannot write " + c.csv);
        f << to_csv(r);
    }
    return r.any_inconclusive() ? 2 : 0;
}

LocalFactor factor(const RunConfig& c, const std::string& what) {
    LocalFactor f;
    f.label = what;
    if (std::filesystem::exists(what))
        f.coeffs = read_coeffs(what);
    else
        f.dist = make_dist(c, what);
    return f;
}

int product(const RunConfig& c, std::ostream& out) {
    if (c.factor1.empty() || c.factor2.empty()) throw std::invalid_argument("product needs --f1 and --f2");
    Point x0 = c.x0.empty() ? (c.location.empty() ? default_point(c.dim) : to_point(c.location, c.dim, "--location"))
                            : to_point(c.x0, c.dim, "--x0");
    CutoffWindow w = bump_window(c.dim, x0, c.inner, c.outer);
    ProductReport p = local_product(factor(c, c.factor1), factor(c, c.factor2), w, c.n_max);
    Json j;
    j["radius"] = p.conv.product.radius();
    j["reliable_radius"] = p.conv.reliable_radius;
    std::size_t flagged = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < p.conv.flagged.size(); ++i) {
        flagged += p.conv.flagged[i];
        worst = std::max(worst, p.conv.tail_bound[i]);
    }
    j["flagged"] = flagged;
    j["max_tail_bound"] = worst;
    j["max_abs"] = p.conv.product.max_abs();
    if (c.young.size() == 2) {
        YoungReport y = young_bound_check(p.f1, p.f2, weight(c.weight_s), weight(c.nu_s), c.young[0], c.young[1]);
        j["young"] = to_json(y);
    } else if (!c.young.empty()) {
        throw std::invalid_argument("--young takes two exponents q1,q2");
    }
    if (!c.csv.empty()) write_coeffs_csv(p.conv.product, c.csv);
    emit(c, j, out);
    return 0;
}

int norm(const RunConfig& c, std::ostream& out) {
    std::function<CoeffArray(int)> source;
    if (has_input(c)) {
        CoeffArray a = read_coeffs(c.input);
        source = [a](int N) {
            if (a.radius() < N)
                throw std::invalid_argument("coefficient file has N_max = " + std::to_string(a.radius()) +
                                            ", need " + std::to_string(N));
            return a.resized(N);
        };
    } else {
        if (c.kind.empty()) throw std::invalid_argument("norm needs --input or --kind");
        TestDistribution t = make_dist(c, c.kind);
        if (c.windowed) {
            Point x0 = c.x0.empty() ? t.location : to_point(c.x0, c.dim, "--x0");
            CutoffWindow w = bump_window(c.dim, x0, c.inner, c.outer);
            source = [t, w](int N) { return analytic_coeffs(t, w, N); };
        } else {
            source = [t](int N) { return exact_coeffs(t, N); };
        }
    }
    Json j;
    Weight w = weight(c.weight_s);
    double q = c.q;
    j["weight"] = w.label();
    j["q"] = number(q);
    j["n_max"] = c.n_max;
    j["norm"] = weighted_norm(source(c.n_max), w, q);
    int code = 0;
    if (c.membership) {
        MembershipReport m = membership_estimate(source, w, q);
        j["membership"] = to_json(m);
        if (m.verdict == Membership::inconclusive) code = 2;
    }
    emit(c, j, out);
    return code;
}

int moderate(const RunConfig& c, std::ostream& out) {
    const int R = c.radius;
    Weight w = weight(c.weight_s);
    if (c.exp_rate > 0.0) {
        const int d = c.dim;
        const double rate = c.exp_rate;
        w = Weight::tabulate(
            d, 2 * R,
            [d, rate](const Index& n) {
                double r2 = 0;
                for (int k = 0; k < d; ++k) r2 += static_cast<double>(n[k]) * n[k];
                return std::exp(rate * std::sqrt(r2));
            },
            "exp(" + std::to_string(rate) + "|n|)");
    }
    ModerateReport m = is_nu_moderate(w, weight(c.nu_s), R, c.dim);
    Json j = to_json(m);
    j["weight"] = w.label();
    j["nu"] = weight(c.nu_s).label();
    emit(c, j, out);
    return 0;
}

int synth(const RunConfig& c, std::ostream& out) {
    if (c.kind.empty()) throw std::invalid_argument("synth needs a distribution kind");
    RunConfig cc = c;
    if (cc.location.empty() && !cc.x0.empty()) cc.location = cc.x0;  // --x0 alone places the distribution
    TestDistribution t = make_dist(cc, c.kind);
    Point x0 = c.x0.empty() ? t.location : to_point(c.x0, c.dim, "--x0");
    const std::filesystem::path path(c.out);
    if (path.extension() == ".json") {
        Grid g(c.dim, c.grid_m);
        SampledField f = sample(t, g);
        if (c.windowed) f = periodize(f, bump_window(g, x0, c.inner, c.outer));
        write_field(f, c.out);
        return 0;
    }
    CoeffArray a = c.windowed ? analytic_coeffs(t, bump_window(c.dim, x0, c.inner, c.outer), c.n_max)
                              : exact_coeffs(t, c.n_max);
    if (c.out.empty())
        write_coeffs_csv(a, out);
    else if (path.extension() == ".bin") {
        write_coeffs_binary(a, c.out);
    } else {
        write_coeffs_csv(a, c.out);
    }
    return 0;
}

}  // namespace

Json to_json(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    if (!c.input.empty()) j["input"] = c.input;
    if (!c.kind.empty()) j["kind"] = c.kind;
    j["dim"] = c.dim;
    if (!c.location.empty()) j["location"] = c.location;
    j["normal"] = c.normal;
    j["width"] = c.width;
    if (!c.wave.empty()) j["wave"] = c.wave;
    if (!c.x0.empty()) j["x0"] = c.x0;
    j["inner"] = c.inner;
    j["outer"] = c.outer;
    j["n_max"] = c.n_max;
    j["scan"] = to_json(c.scan);
    j["map_points"] = c.map_points;
    if (!c.axis.empty()) j["axis"] = c.axis;
    if (!c.factor1.empty()) j["f1"] = c.factor1;
    if (!c.factor2.empty()) j["f2"] = c.factor2;
    if (!c.young.empty()) j["young"] = c.young;
    j["weight_s"] = c.weight_s;
    j["nu_s"] = c.nu_s;
    j["q"] = number(c.q);
    j["membership"] = c.membership;
    j["exp_rate"] = c.exp_rate;
    j["radius"] = c.radius;
    j["grid_m"] = c.grid_m;
    j["windowed"] = c.windowed;
    if (!c.out.empty()) j["out"] = c.out;
    if (!c.csv.empty()) j["csv"] = c.csv;
    j["seed"] = c.seed;
    return j;
}

int run(const RunConfig& c, std::ostream& out) {
    if (c.command == "analyze-wf") return analyze(c, out, ScanKind::wavefront);
    if (c.command == "analyze-sobolev") return analyze(c, out, ScanKind::sobolev);
    if (c.command == "product") return product(c, out);
    if (c.command == "norm") return norm(c, out);
    if (c.command == "moderate-check") return moderate(c, out);
    if (c.command == "synth") return synth(c, out);
    throw std::invalid_argument("unknown command '" + c.command + "'");
}

}  // namespace mlwf
