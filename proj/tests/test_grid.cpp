#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mlwf/field_io.hpp"
#include "mlwf/grid.hpp"

using namespace mlwf;

TEST_CASE("smooth step is flat at both ends and symmetric") {
    CHECK(smooth_step(0.0) == 0.0);
    CHECK(smooth_step(1.0) == 1.0);
    CHECK(smooth_step(-0.3) == 0.0);
    CHECK(smooth_step(1.7) == 1.0);
    CHECK(smooth_step(0.5) == doctest::Approx(0.5));
    for (double t : {0.1, 0.27, 0.6}) CHECK(smooth_step(t) + smooth_step(1 - t) == doctest::Approx(1.0));
    // all derivatives vanish at 0: far below any power near the endpoint
    CHECK(smooth_step(0.01) < 1e-30);
}

TEST_CASE("torus distance") {
    CHECK(torus_distance(0.1, 0.9) == doctest::Approx(0.2));
    CHECK(torus_distance(0.25, 0.75) == doctest::Approx(0.5));
    CHECK(torus_distance(1.3, 0.3) == doctest::Approx(0.0));
}

TEST_CASE("window plateau, transition and support") {
    CutoffWindow w(2, {0.5, 0.5, 0}, 0.1, 0.2);
    CHECK(w({0.5, 0.5, 0}) == 1.0);
    CHECK(w({0.59, 0.45, 0}) == 1.0);
    CHECK(w({0.75, 0.5, 0}) == 0.0);
    double mid = w({0.65, 0.5, 0});
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
    CHECK(mid == doctest::Approx(0.5));
    CHECK(w.in_plateau({0.6, 0.4, 0}));
    CHECK_FALSE(w.in_plateau({0.61, 0.4, 0}));
    CHECK(w.outside_support({0.5, 0.3, 0}));
    CHECK_FALSE(w.outside_support({0.5, 0.31, 0}));

    // periodic: a window near 0 wraps around
    CutoffWindow e(1, {0.02, 0, 0}, 0.05, 0.1);
    CHECK(e({0.99, 0, 0}) == 1.0);
    CHECK(e.recentered({0.5, 0, 0})({0.5, 0, 0}) == 1.0);
}

TEST_CASE("window validation") {
    CHECK_THROWS(bump_window(1, {0.5, 0, 0}, 0.2, 0.1));
    CHECK_THROWS(bump_window(1, {0.5, 0, 0}, 0.0, 0.1));
    CHECK_THROWS(bump_window(1, {0.5, 0, 0}, 0.1, 0.5));
    CHECK_NOTHROW(bump_window(1, {0.5, 0, 0}, 0.1, 0.2));
    // transition band narrower than two samples of a 64-point grid
    CHECK_THROWS(bump_window(make_grid(1, 64), {0.5, 0, 0}, 0.1, 0.12));
    CHECK_NOTHROW(bump_window(make_grid(1, 64), {0.5, 0, 0}, 0.1, 0.14));
}

TEST_CASE("grid indexing and field validation") {
    Grid g = make_grid(2, 8);
    CHECK(g.size() == 64);
    CHECK(g.flat({1, 2, 0}) == 10);
    Point p = g.point(10);
    CHECK(p[0] == doctest::Approx(0.125));
    CHECK(p[1] == doctest::Approx(0.25));
    CHECK_THROWS(SampledField(g, std::vector<cplx>(63)));
    std::vector<cplx> bad(64);
    bad[3] = {NAN, 0};
    CHECK_THROWS(SampledField(g, bad));
    CHECK_THROWS(make_grid(4, 8));
    CHECK_THROWS(make_grid(1, 0));
}

TEST_CASE("periodize multiplies by the window") {
    Grid g = make_grid(1, 64);
    SampledField f(g, std::vector<cplx>(64, cplx{2.0, 1.0}));
    CutoffWindow w = bump_window(g, {0.5, 0, 0}, 0.1, 0.3);
    SampledField p = periodize(f, w);
    SampledField s = sample_window(w, g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(p.values[i] == s.values[i] * cplx{2.0, 1.0});
}

TEST_CASE("field files round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "mlwf_grid_test";
    fs::create_directories(dir);
    Grid g = make_grid(2, 4);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = {0.1 * i, -1.0 / (i + 1)};
    SampledField f(g, v, "test");
    write_field(f, (dir / "f.json").string());
    SampledField r = read_field((dir / "f.json").string());
    CHECK(r.grid.dim() == 2);
    CHECK(r.grid.samples_per_axis() == 4);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(r.values[i] == v[i]);
    CHECK_THROWS(write_field_csv(f, (dir / "f.csv").string()));
    SampledField line(make_grid(1, 16), std::vector<cplx>(v.begin(), v.end()));
    write_field_csv(line, (dir / "f.csv").string());
    SampledField c = read_field_csv((dir / "f.csv").string());
    REQUIRE(c.values.size() == 16);
    for (std::size_t i = 0; i < 16; ++i) CHECK(c.values[i] == v[i]);
    // a 2-D manifest may point at a CSV payload in row-major order
    std::ofstream m(dir / "g.json");
    m << R"({"d": 2, "M": 4, "data": "f.csv"})";
    m.close();
    SampledField r2 = read_field((dir / "g.json").string());
    CHECK(r2.grid.dim() == 2);
    CHECK(r2.values[5] == v[5]);
    CHECK_THROWS(read_field((dir / "missing.json").string()));
    fs::remove_all(dir);
}
