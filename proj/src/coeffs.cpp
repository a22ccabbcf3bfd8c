#include "mlwf/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mlwf/detail/fft.hpp"

namespace mlwf {

using std::numbers::pi;

CoeffArray::CoeffArray(int dim, int radius, Source source) : dim_(dim), radius_(radius), source_(source) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("coefficient dimension must be 1, 2 or 3");
    if (radius < 0) throw std::invalid_argument("coefficient radius must be non-negative");
    std::size_t n = 1;
    for (int j = 0; j < dim; ++j) n *= static_cast<std::size_t>(side());
    data_.assign(n, cplx{});
}

bool CoeffArray::contains(const Index& n) const {
    for (int j = 0; j < dim_; ++j)
        if (n[j] < -radius_ || n[j] > radius_) return false;
    return true;
}

std::size_t CoeffArray::flat(const Index& n) const {
    std::size_t f = 0;
    for (int j = 0; j < dim_; ++j) f = f * side() + static_cast<std::size_t>(n[j] + radius_);
    return f;
}

Index CoeffArray::index(std::size_t flat) const {
    Index n{};
    for (int j = dim_ - 1; j >= 0; --j) {
        n[j] = static_cast<int>(flat % side()) - radius_;
        flat /= side();
    }
    return n;
}

CoeffArray CoeffArray::resized(int radius) const {
    CoeffArray out(dim_, radius, source_);
    out.refinement = refinement;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = get(out.index(i));
    return out;
}

double CoeffArray::max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

const char* to_string(CoeffArray::Source s) {
    switch (s) {
        case CoeffArray::Source::sampled: return "sampled";
        case CoeffArray::Source::analytic: return "analytic";
        case CoeffArray::Source::synthetic: return "synthetic";
    }
    return "?";
}

CoeffArray fourier_coefficients(const SampledField& f, int radius) {
    const int m = f.grid.samples_per_axis();
    const int d = f.grid.dim();
    if (2 * radius >= m)
        throw std::invalid_argument("coefficient radius " + std::to_string(radius) + " needs more than " +
                                    std::to_string(m) + " samples per axis (radius < M/2)");
    std::vector<cplx> buf = f.values;
    detail::fft_cube(buf, d, m, -1);
    double scale = std::pow(static_cast<double>(m), -d);
    CoeffArray a(d, radius, CoeffArray::Source::sampled);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = buf[f.grid.flat(a.index(i))] * scale;
    return a;
}

SampledField synthesize(const CoeffArray& a, const Grid& grid) {
    if (a.dim() != grid.dim()) throw std::invalid_argument("coefficient and grid dimensions differ");
    if (2 * a.radius() >= grid.samples_per_axis())
        throw std::invalid_argument("grid too coarse to synthesize coefficients of this radius");
    std::vector<cplx> buf(grid.size());
    for (std::size_t i = 0; i < a.size(); ++i) buf[grid.flat(a.index(i))] = a[i];
    detail::fft_cube(buf, grid.dim(), grid.samples_per_axis(), +1);
    return SampledField(grid, std::move(buf), "synthesized");
}

CoeffArray modulated(const CoeffArray& a, const Index& m, int radius) {
    int reach = 0;
    for (int j = 0; j < a.dim(); ++j) reach = std::max(reach, std::abs(m[j]));
    if (a.radius() < radius + reach)
        throw std::invalid_argument("modulation by this frequency needs input radius >= " +
                                    std::to_string(radius + reach));
    CoeffArray b(a.dim(), radius, a.source());
    b.refinement = a.refinement;
    for (std::size_t i = 0; i < b.size(); ++i) {
        Index n = b.index(i);
        for (int j = 0; j < a.dim(); ++j) n[j] -= m[j];
        b[i] = a.at(n);
    }
    return b;
}

// ---- files ---------------------------------------------------------------

void write_coeffs_csv(const CoeffArray& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_coeffs_csv(a, out);
}

void write_coeffs_csv(const CoeffArray& a, std::ostream& out) {
    for (int j = 0; j < a.dim(); ++j) out << "n" << (j + 1) << ",";
    out << "re,im\n";
    char buf[64];
    for (std::size_t i = 0; i < a.size(); ++i) {
        Index n = a.index(i);
        for (int j = 0; j < a.dim(); ++j) out << n[j] << ",";
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", a[i].real(), a[i].imag());
        out << buf;
    }
}

CoeffArray read_coeffs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty coefficient file " + path);
    int dim = static_cast<int>(std::count(line.begin(), line.end(), ',')) - 1;
    if (dim < 1 || dim > kMaxDim || line.rfind("n1", 0) != 0)
        throw std::runtime_error("coefficient CSV header must be n1[,n2[,n3]],re,im");
    struct Row {
        Index n;
        cplx v;
    };
    std::vector<Row> rows;
    int radius = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        Row r{};
        for (int j = 0; j < dim; ++j) {
            if (!(ss >> r.n[j])) throw std::runtime_error("malformed coefficient row in " + path);
            radius = std::max(radius, std::abs(r.n[j]));
        }
        double re, im;
        if (!(ss >> re >> im)) throw std::runtime_error("malformed coefficient row in " + path);
        r.v = {re, im};
        rows.push_back(r);
    }
    CoeffArray a(dim, radius);
    for (const Row& r : rows) a.at(r.n) = r.v;
    return a;
}

void write_coeffs_binary(const CoeffArray& a, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    nlohmann::ordered_json h;
    h["d"] = a.dim();
    h["N_max"] = a.radius();
    out << h.dump() << "\n";
    out.write(reinterpret_cast<const char*>(a.values().data()),
              static_cast<std::streamsize>(a.size() * sizeof(cplx)));
}

CoeffArray read_coeffs_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string header;
    std::getline(in, header);
    nlohmann::json h;
    try {
        h = nlohmann::json::parse(header);
    } catch (const nlohmann::json::exception&) {
        throw std::runtime_error("binary coefficient file " + path + " lacks a JSON header line");
    }
    CoeffArray a(h.at("d").get<int>(), h.at("N_max").get<int>());
    in.read(reinterpret_cast<char*>(a.values().data()), static_cast<std::streamsize>(a.size() * sizeof(cplx)));
    if (static_cast<std::size_t>(in.gcount()) != a.size() * sizeof(cplx))
        throw std::runtime_error("binary coefficient file " + path + " is truncated");
    return a;
}

CoeffArray read_coeffs(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return read_coeffs_csv(path);
    return read_coeffs_binary(path);
}

// ---- test distributions ----------------------------------------------------

const char* to_string(Kind k) {
    switch (k) {
        case Kind::delta: return "delta";
        case Kind::square_wave_1d: return "square_wave_1d";
        case Kind::kink_1d: return "kink_1d";
        case Kind::halfplane_edge_2d: return "halfplane_edge_2d";
        case Kind::line_delta_2d: return "line_delta_2d";
        case Kind::gaussian: return "gaussian";
        case Kind::plane_wave: return "plane_wave";
    }
    return "?";
}

Kind kind_from_string(const std::string& s) {
    for (Kind k : {Kind::delta, Kind::square_wave_1d, Kind::kink_1d, Kind::halfplane_edge_2d, Kind::line_delta_2d,
                   Kind::gaussian, Kind::plane_wave})
        if (s == to_string(k)) return k;
    throw std::invalid_argument("unknown distribution kind '" + s + "'");
}

bool TestDistribution::sampleable() const { return kind != Kind::delta && kind != Kind::line_delta_2d; }

namespace {

void check_dims(const TestDistribution& t) {
    if (t.dim < 1 || t.dim > kMaxDim) throw std::invalid_argument("distribution dimension must be 1, 2 or 3");
    if ((t.kind == Kind::square_wave_1d || t.kind == Kind::kink_1d) && t.dim != 1)
        throw std::invalid_argument(std::string(to_string(t.kind)) + " is one-dimensional");
    if ((t.kind == Kind::halfplane_edge_2d || t.kind == Kind::line_delta_2d) && t.dim != 2)
        throw std::invalid_argument(std::string(to_string(t.kind)) + " is two-dimensional");
    if (t.kind == Kind::gaussian && !(t.width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
}

double frac(double x) { return x - std::floor(x); }

double gaussian_1d_periodic(double x, double c, double s) {
    double v = 0.0;
    double u = frac(x - c);
    for (int k = -3; k <= 3; ++k) {
        double z = (u + k) / s;
        v += std::exp(-0.5 * z * z);
    }
    return v;
}

}  // namespace

SampledField sample(const TestDistribution& t, const Grid& grid) {
    check_dims(t);
    if (t.dim != grid.dim()) throw std::invalid_argument("distribution and grid dimensions differ");
    if (!t.sampleable())
        throw std::invalid_argument(std::string(to_string(t.kind)) + " is not a function and cannot be sampled");
    std::vector<cplx> v(grid.size());
    for (std::size_t f = 0; f < grid.size(); ++f) {
        Point x = grid.point(f);
        switch (t.kind) {
            case Kind::square_wave_1d: {
                double u = frac(x[0] - t.location[0]);
                v[f] = (u == 0.0 || u == 0.5) ? 0.0 : (u < 0.5 ? 1.0 : -1.0);
                break;
            }
            case Kind::kink_1d: v[f] = torus_distance(x[0], t.location[0]); break;
            case Kind::halfplane_edge_2d: {
                double s = t.normal[0] * (x[0] - t.location[0]) + t.normal[1] * (x[1] - t.location[1]);
                v[f] = s > 0 ? 1.0 : (s == 0 ? 0.5 : 0.0);
                break;
            }
            case Kind::gaussian: {
                double g = 1.0;
                for (int j = 0; j < t.dim; ++j) g *= gaussian_1d_periodic(x[j], t.location[j], t.width);
                v[f] = g;
                break;
            }
            case Kind::plane_wave: {
                double ph = 0.0;
                for (int j = 0; j < t.dim; ++j) ph += t.wave[j] * x[j];
                v[f] = std::polar(1.0, 2 * pi * ph);
                break;
            }
            default: break;
        }
    }
    return SampledField(grid, std::move(v), to_string(t.kind));
}

CoeffArray exact_coeffs(const TestDistribution& t, int radius) {
    check_dims(t);
    CoeffArray a(t.dim, radius, CoeffArray::Source::analytic);
    if (t.kind == Kind::halfplane_edge_2d || t.kind == Kind::line_delta_2d)
        throw std::invalid_argument(std::string(to_string(t.kind)) + " is not periodic; use a window");
    for (std::size_t i = 0; i < a.size(); ++i) {
        Index n = a.index(i);
        double ndotp = 0.0, n2 = 0.0;
        for (int j = 0; j < t.dim; ++j) {
            ndotp += n[j] * t.location[j];
            n2 += static_cast<double>(n[j]) * n[j];
        }
        cplx shift = std::polar(1.0, -2 * pi * ndotp);
        switch (t.kind) {
            case Kind::delta: a[i] = shift; break;
            case Kind::square_wave_1d:
                a[i] = (n[0] % 2 == 0) ? cplx{} : shift * (2.0 / (pi * cplx(0, n[0])));
                break;
            case Kind::kink_1d:
                if (n[0] == 0)
                    a[i] = 0.25;
                else
                    a[i] = (n[0] % 2 == 0) ? cplx{} : shift * (-1.0 / (pi * pi * n2));
                break;
            case Kind::gaussian:
                a[i] = std::pow(t.width * std::sqrt(2 * pi), t.dim) * std::exp(-2 * pi * pi * t.width * t.width * n2) *
                       shift;
                break;
            case Kind::plane_wave: {
                bool hit = true;
                for (int j = 0; j < t.dim; ++j) hit = hit && n[j] == t.wave[j];
                a[i] = hit ? 1.0 : 0.0;
                break;
            }
            default: break;
        }
    }
    return a;
}

}  // namespace mlwf
