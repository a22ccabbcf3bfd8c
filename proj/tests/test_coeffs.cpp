#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mlwf/coeffs.hpp"

using namespace mlwf;

namespace {

CoeffArray random_band(int dim, int radius, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    CoeffArray a(dim, radius);
    for (auto& z : a.values()) z = {g(rng), g(rng)};
    return a;
}

}  // namespace

TEST_CASE("coefficient box layout") {
    CoeffArray a(2, 3);
    CHECK(a.side() == 7);
    CHECK(a.size() == 49);
    CHECK(a.flat({-3, -3, 0}) == 0);
    CHECK(a.flat({-3, -2, 0}) == 1);  // last axis fastest
    CHECK(a.flat({-2, -3, 0}) == 7);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.flat(a.index(i)) == i);
    CHECK(a.contains({3, -3, 0}));
    CHECK_FALSE(a.contains({4, 0, 0}));
    CHECK(a.get({5, 0, 0}) == cplx{});
    a.at({1, 2, 0}) = 3.0;
    CHECK(a.resized(5).get({1, 2, 0}) == 3.0);
    CHECK(a.resized(1).size() == 9);
}

TEST_CASE("delta at one half has coefficients (-1)^n") {
    TestDistribution d;
    d.location = {0.5, 0, 0};
    CoeffArray a = exact_coeffs(d, 16);
    for (int n = -16; n <= 16; ++n) {
        CHECK(a.at({n, 0, 0}).real() == doctest::Approx(n % 2 == 0 ? 1.0 : -1.0));
        CHECK(std::abs(a.at({n, 0, 0}).imag()) < 1e-14);
    }
}

TEST_CASE("FFT round trip and Parseval") {
    for (int d : {1, 2, 3}) {
        const int M = d == 3 ? 16 : 64;
        Grid g = make_grid(d, M);
        CoeffArray a = random_band(d, M / 2 - 1, 11 + d);
        SampledField f = synthesize(a, g);
        CoeffArray b = fourier_coefficients(f, a.radius());
        double err = 0, energy = 0, pointwise = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            err = std::max(err, std::abs(a[i] - b[i]));
            energy += std::norm(a[i]);
        }
        for (const cplx& z : f.values) pointwise += std::norm(z);
        CHECK(err < 1e-12);
        CHECK(pointwise / g.size() == doctest::Approx(energy).epsilon(1e-12));
    }
}

TEST_CASE("fourier_coefficients needs 2N < M") {
    Grid g = make_grid(1, 32);
    SampledField f(g, std::vector<cplx>(32, 1.0));
    CHECK_NOTHROW(fourier_coefficients(f, 15));
    CHECK_THROWS(fourier_coefficients(f, 16));
    CHECK_THROWS(synthesize(CoeffArray(1, 16), g));
}

TEST_CASE("sampled square wave matches its closed form away from aliasing") {
    TestDistribution d;
    d.kind = Kind::square_wave_1d;
    d.location = {0.25, 0, 0};
    Grid g = make_grid(1, 1 << 14);
    CoeffArray s = fourier_coefficients(sample(d, g), 8);
    CoeffArray e = exact_coeffs(d, 8);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(s[i] - e[i]) < 1e-6);
    CHECK(std::abs(e.at({0, 0, 0})) < 1e-15);
    CHECK(std::abs(e.at({2, 0, 0})) < 1e-15);
    CHECK(std::abs(e.at({1, 0, 0})) == doctest::Approx(2 / std::numbers::pi));
}

TEST_CASE("modulation shifts the coefficients") {
    CoeffArray a = random_band(2, 10, 3);
    CoeffArray b = modulated(a, {2, -3, 0}, 7);
    CHECK(b.radius() == 7);
    CHECK(b.at({0, 0, 0}) == a.at({-2, 3, 0}));
    CHECK(b.at({7, -7, 0}) == a.at({5, -4, 0}));
    CHECK_THROWS(modulated(a, {4, 0, 0}, 7));

    // against sampling e_m * f
    Grid g = make_grid(1, 64);
    CoeffArray c = random_band(1, 20, 4);
    SampledField f = synthesize(c, g);
    for (std::size_t k = 0; k < g.size(); ++k)
        f.values[k] *= std::polar(1.0, 2 * std::numbers::pi * 5 * g.point(k)[0]);
    CoeffArray direct = fourier_coefficients(f, 15);
    CoeffArray shifted = modulated(c.resized(20), {5, 0, 0}, 15);
    for (std::size_t i = 0; i < direct.size(); ++i) CHECK(std::abs(direct[i] - shifted[i]) < 1e-12);
}

TEST_CASE("coefficient files round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "mlwf_coeff_test";
    fs::create_directories(dir);
    for (int d : {1, 2}) {
        CoeffArray a = random_band(d, 5, 9);
        for (const char* ext : {".csv", ".bin"}) {
            fs::path p = dir / ("a" + std::to_string(d) + ext);
            if (std::string(ext) == ".csv")
                write_coeffs_csv(a, p.string());
            else
                write_coeffs_binary(a, p.string());
            CoeffArray b = read_coeffs(p.string());
            REQUIRE(b.dim() == d);
            REQUIRE(b.radius() == 5);
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
        }
    }
    CHECK_THROWS(read_coeffs((dir / "missing.csv").string()));
    fs::remove_all(dir);
}

TEST_CASE("kind names") {
    for (Kind k : {Kind::delta, Kind::square_wave_1d, Kind::kink_1d, Kind::halfplane_edge_2d, Kind::line_delta_2d,
                   Kind::gaussian, Kind::plane_wave})
        CHECK(kind_from_string(to_string(k)) == k);
    CHECK_THROWS(kind_from_string("sawtooth"));
    TestDistribution d;
    CHECK_FALSE(d.sampleable());
    d.kind = Kind::kink_1d;
    CHECK(d.sampleable());
    CHECK_THROWS(sample(TestDistribution{}, make_grid(1, 16)));
}
