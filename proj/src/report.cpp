#include "mlwf/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace mlwf {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

namespace {

Json point(const Point& p, int dim) {
    Json a = Json::array();
    for (int j = 0; j < dim; ++j) a.push_back(p[j]);
    return a;
}

double angle_deg(const Point& u) {
    double a = std::atan2(u[1], u[0]) * 180.0 / std::numbers::pi;
    if (a < 0) a += 360.0;
    return std::round(a * 1e9) / 1e9;
}

Json shells(const std::vector<ShellStat>& s) {
    Json a = Json::array();
    for (const auto& x : s) a.push_back(Json{{"k", x.k}, {"count", x.count}, {"value", x.value}});
    return a;
}

Json cone_json(const ConeResult& c) {
    Json j;
    j["half_angle_deg"] = c.half_angle_deg;
    if (c.decay) {
        j["order"] = number(c.decay->order);
        j["rapid"] = c.decay->rapid;
        j["log_constant"] = c.decay->log_constant;
        j["residual"] = c.decay->residual;
        j["shells"] = shells(c.decay->shells);
        j["skipped_shells"] = c.decay->skipped;
    }
    if (c.sobolev) {
        j["critical_order"] = number(c.sobolev->critical);
        j["rapid"] = c.sobolev->rapid;
        j["rate"] = number(c.sobolev->rate);
        j["residual"] = c.sobolev->residual;
        j["shells"] = shells(c.sobolev->shells);
        j["skipped_shells"] = c.sobolev->skipped;
    }
    j["verdict"] = to_string(c.verdict);
    if (!c.error.empty()) j["error"] = c.error;
    return j;
}

}  // namespace

Json to_json(const CutoffWindow& w) {
    return Json{{"center", point(w.center(), w.dim())}, {"inner", w.inner()}, {"outer", w.outer()}};
}

Json to_json(const ScanParams& p) {
    Json j;
    j["half_angle_deg"] = p.half_angle_deg;
    j["directions"] = p.directions;
    j["threshold"] = p.threshold;
    j["order"] = p.order;
    j["band"] = p.band;
    j["max_residual"] = p.max_residual;
    j["nested"] = p.nested;
    j["k_min"] = p.fit.k_min;
    j["k_max"] = p.fit.k_max;
    j["floor_rel"] = p.fit.floor_rel;
    if (!p.axes.empty()) {
        Json a = Json::array();
        for (const Point& u : p.axes) a.push_back(Json::array({u[0], u[1], u[2]}));
        j["axes"] = a;
    }
    return j;
}

Json to_json(const ScanResult& r) {
    Json j;
    j["schema"] = "wavefront-report/1";
    j["kind"] = r.kind == ScanKind::wavefront ? "wavefront" : "sobolev";
    j["dim"] = r.dim;
    j["x0"] = point(r.x0, r.dim);
    if (r.window.dim() > 0) j["window"] = to_json(r.window);
    j["params"] = to_json(r.params);
    j["n_max"] = r.n_max;
    j["k_max"] = r.k_max;
    j["source"] = r.source;
    j["quadrature_panels"] = r.refinement;
    if (!r.error.empty()) {
        j["error"] = r.error;
        return j;
    }
    Json dirs = Json::array();
    Json sing = Json::array();
    for (const auto& d : r.directions) {
        Json e;
        e["direction"] = point(d.direction, r.dim);
        if (r.dim == 2) e["angle_deg"] = angle_deg(d.direction);
        e["verdict"] = to_string(d.verdict);
        Json cones = Json::array();
        for (const auto& c : d.cones) cones.push_back(cone_json(c));
        e["cones"] = cones;
        if (!d.error.empty()) e["error"] = d.error;
        dirs.push_back(e);
        if (d.verdict == Verdict::singular) sing.push_back(point(d.direction, r.dim));
    }
    j["singular"] = sing;
    j["inconclusive"] = r.any_inconclusive();
    j["directions"] = dirs;
    return j;
}

Json to_json(const std::vector<MapEntry>& map) {
    Json a = Json::array();
    for (const auto& e : map) {
        Json j;
        j["x"] = point(e.x, e.scan.dim);
        if (!e.scan.error.empty()) {
            j["error"] = e.scan.error;
        } else {
            Json s = Json::array();
            for (const Point& p : e.scan.singular()) s.push_back(point(p, e.scan.dim));
            j["singular"] = s;
            j["inconclusive"] = e.scan.any_inconclusive();
        }
        a.push_back(j);
    }
    return a;
}

Json to_json(const MembershipReport& r) {
    Json j;
    j["levels"] = r.levels;
    Json n = Json::array();
    for (double v : r.norms) n.push_back(number(v));
    j["norms"] = n;
    j["verdict"] = to_string(r.verdict);
    return j;
}

Json to_json(const ModerateReport& r) {
    return Json{{"radius", r.radius},
                {"constant", number(r.constant)},
                {"half_radius_constant", number(r.half_constant)},
                {"verdict", r.stable ? "stable" : "growing"}};
}

Json to_json(const YoungReport& r) {
    return Json{{"q1", number(r.q1)},       {"q2", number(r.q2)},    {"q", number(r.q)},
                {"lhs", r.lhs},             {"norm1", r.norm1},      {"norm2", r.norm2},
                {"constant", r.constant},   {"rhs", r.rhs},          {"holds", r.holds}};
}

Json to_json(const LocalizationReport& r) {
    return Json{{"lhs", r.lhs},       {"window_norm", r.window_norm}, {"norm", r.norm},
                {"constant", r.constant}, {"rhs", r.rhs},             {"holds", r.holds}};
}

std::string to_csv(const ScanResult& r) {
    std::ostringstream out;
    const char* comps[3] = {"xi1", "xi2", "xi3"};
    for (int j = 0; j < r.dim; ++j) out << comps[j] << ",";
    if (r.dim == 2) out << "angle_deg,";
    out << (r.kind == ScanKind::wavefront ? "order" : "critical_order") << ",residual,verdict\n";
    char buf[64];
    for (const auto& d : r.directions) {
        for (int j = 0; j < r.dim; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,", d.direction[j]);
            out << buf;
        }
        if (r.dim == 2) {
            std::snprintf(buf, sizeof buf, "%.9g,", angle_deg(d.direction));
            out << buf;
        }
        double est = NAN, res = NAN;
        if (!d.cones.empty()) {
            const ConeResult& c = d.cones.front();
            if (c.decay) {
                est = c.decay->order;
                res = c.decay->residual;
            } else if (c.sobolev) {
                est = c.sobolev->critical;
                res = c.sobolev->residual;
            }
        }
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,", est, res);
        out << buf << to_string(d.verdict) << "\n";
    }
    return out.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mlwf
