#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mlwf/algebra.hpp"

using namespace mlwf;

namespace {

CoeffArray random_band(int dim, int radius, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CoeffArray a(dim, radius);
    for (auto& z : a.values()) z = {g(rng), g(rng)};
    return a;
}

}  // namespace

TEST_CASE("convolution of finite sequences by hand") {
    CoeffArray a(1, 1), b(1, 1);
    a.at({-1, 0, 0}) = 1.0;
    a.at({0, 0, 0}) = 2.0;
    a.at({1, 0, 0}) = 3.0;
    b.at({0, 0, 0}) = 1.0;
    b.at({1, 0, 0}) = -1.0;
    CoeffArray c = full_convolution(a, b);
    REQUIRE(c.radius() == 2);
    const double want[] = {0, 1, 1, 1, -3};
    for (int n = -2; n <= 2; ++n) CHECK(c.at({n, 0, 0}) == want[n + 2]);
}

TEST_CASE("direct and FFT convolution agree") {
    std::mt19937_64 rng(21);
    for (int d : {1, 2, 3}) {
        CoeffArray a = random_band(d, d == 3 ? 4 : 12, rng), b = random_band(d, d == 3 ? 3 : 9, rng);
        CoeffArray x = full_convolution(a, b, ConvolutionMethod::direct);
        CoeffArray y = full_convolution(a, b, ConvolutionMethod::fft);
        double m = 0;
        for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
        CHECK(m < 1e-11);
    }
}

TEST_CASE("convolution matches the pointwise product") {
    std::mt19937_64 rng(22);
    CoeffArray a = random_band(2, 10, rng), b = random_band(2, 7, rng);
    Grid g = make_grid(2, 40);
    SampledField p = synthesize(a, g), q = synthesize(b, g);
    for (std::size_t i = 0; i < p.values.size(); ++i) p.values[i] *= q.values[i];
    CoeffArray ref = fourier_coefficients(p, 17);
    CoeffArray got = coeff_convolution(a, b, 17).product;
    double m = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) m = std::max(m, std::abs(ref[i] - got[i]));
    CHECK(m < 1e-11);
}

TEST_CASE("truncation flags") {
    // f2 reaches further than f1 can compensate: the outer entries are unreliable
    CoeffArray f1(1, 3), f2(1, 10);
    for (auto& z : f1.values()) z = 1.0;
    for (std::size_t i = 0; i < f2.size(); ++i) f2[i] = std::pow(0.1, std::abs(f2.index(i)[0]));
    ConvolutionResult r = coeff_convolution(f1, f2, 8);
    CHECK(r.tail_bound.size() == r.product.size());
    // |n| <= 3: missed mass sum_{|j| >= 4 - |n|...}; at n = 0 it is 2 * 0.1^4 / 0.9
    CHECK(r.tail_bound[r.product.flat({0, 0, 0})] == doctest::Approx(2 * 1e-4 / 0.9).epsilon(1e-6));
    CHECK(r.reliable_radius == -1);
    for (std::size_t i = 0; i < r.product.size(); ++i)
        CHECK(static_cast<bool>(r.flagged[i]) == (r.tail_bound[i] > kTailFlag));
    // values of f1 beyond its box are unknown, so entries past r1 are never certified
    CoeffArray g1(1, 2), g2(1, 2);
    g1.at({0, 0, 0}) = 1.0;
    g2.at({0, 0, 0}) = 1.0;
    ConvolutionResult q = coeff_convolution(g1, g2, 4);
    CHECK(q.reliable_radius == 2);
    CHECK(q.tail_bound[q.product.flat({1, 0, 0})] == 0.0);
}

TEST_CASE("Young exponent") {
    CHECK(young_exponent(1, 1) == 1.0);
    CHECK(young_exponent(1, 2) == 2.0);
    CHECK(young_exponent(2, 2) == INFINITY);
    CHECK(young_exponent(1.5, 1.5) == doctest::Approx(3.0));
    CHECK_THROWS(young_exponent(3, 3));
    CHECK_THROWS(young_exponent(0.5, 1));
}

TEST_CASE("Young bound holds for moderate weights") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 10; ++t) {
        CoeffArray a = random_band(1, 15, rng), b = random_band(1, 8, rng);
        YoungReport r = young_bound_check(a, b, Weight::polynomial(1), Weight::polynomial(1), 1, 2);
        CHECK(r.q == 2.0);
        CHECK(r.holds);
        CHECK(r.lhs <= r.rhs);
    }
}

TEST_CASE("Sobolev product weights") {
    ProductWeights p = sobolev_product_weights(1.0, 2.0, 0.5);
    CHECK(p.w.exponent() == 1.0);
    CHECK(p.nu.exponent() == 2.0);
    CHECK_THROWS(sobolev_product_weights(-1.0, 0.5, 0.0));
    CHECK_THROWS(sobolev_product_weights(1.0, 2.0, 1.5));
}

TEST_CASE("localization bound") {
    std::mt19937_64 rng(24);
    Grid g = make_grid(1, 256);
    CutoffWindow w = bump_window(g, {0.3, 0, 0}, 0.05, 0.2);
    for (double q : {1.0, 2.0, double(INFINITY)}) {
        LocalizationReport r =
            localization_bound_check(random_band(1, 20, rng), w, g, Weight::polynomial(-1), Weight::polynomial(1), q);
        CHECK(r.holds);
    }
}

TEST_CASE("local product of a square wave with itself is the squared window") {
    TestDistribution d;
    d.kind = Kind::square_wave_1d;
    d.location = {0.5, 0, 0};
    CutoffWindow w(1, {0.5, 0, 0}, 0.02, 0.25);
    LocalFactor f{d, std::nullopt, "square"};
    ProductReport r = local_product(f, f, w, 16, 1024);
    Grid g = make_grid(1, 1024);
    SampledField sq = sample_window(w, g);
    for (auto& z : sq.values) z *= z;
    CoeffArray ref = fourier_coefficients(sq, 16);
    // the windowed inputs decay like 1/n, so the truncated product converges slowly
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(r.conv.product[i] - ref[i]) < 1e-3);
    CHECK(r.conv.reliable_radius < 16);
    ProductReport small = local_product(f, f, w, 16);
    CHECK(small.f1.radius() == 16);
}

TEST_CASE("convolution is commutative and bilinear") {
    std::mt19937_64 rng(25);
    CoeffArray a = random_band(2, 6, rng), b = random_band(2, 9, rng), c = random_band(2, 6, rng);
    CoeffArray ab = coeff_convolution(a, b, 8).product, ba = coeff_convolution(b, a, 8).product;
    for (std::size_t i = 0; i < ab.size(); ++i) CHECK(std::abs(ab[i] - ba[i]) < 1e-13);
    CoeffArray sum(2, 6);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = 2.0 * a[i] + c[i];
    CoeffArray lhs = full_convolution(sum, b), x = full_convolution(a, b), y = full_convolution(c, b);
    for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs[i] - (2.0 * x[i] + y[i])) < 1e-12);
}

TEST_CASE("product with the constant one is the window times the other factor") {
    TestDistribution g;
    g.kind = Kind::gaussian;
    g.location = {0.48, 0, 0};
    g.width = 0.05;
    CutoffWindow w(1, {0.5, 0, 0}, 0.1, 0.3);
    CoeffArray f1 = analytic_coeffs(g, w, 200);
    // phi * 1 = window coefficients
    CoeffArray one = window_coefficients(w, make_grid(1, 1024)).resized(200);
    ProductReport r = local_product({std::nullopt, f1, "g"}, {std::nullopt, one, "1"}, w, 120);
    // against phi^2 * g sampled
    Grid grid = make_grid(1, 512);
    SampledField s = periodize(periodize(sample(g, grid), w), w);
    CoeffArray ref = fourier_coefficients(s, 120);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(r.conv.product[i] - ref[i]) < 1e-10);
    // on the plateau the synthesized product is g itself
    SampledField back = synthesize(r.conv.product, make_grid(1, 256));
    for (std::size_t k = 0; k < 256; ++k) {
        double x = back.grid.point(k)[0];
        if (std::fabs(x - 0.5) <= 0.1) {
            double gx = std::exp(-(x - 0.48) * (x - 0.48) / (2 * 0.05 * 0.05));
            CHECK(std::abs(back.values[k] - gx) < 1e-8);
        }
    }
}

TEST_CASE("Gaussian times cosine matches the pointwise product") {
    TestDistribution g;
    g.kind = Kind::gaussian;
    g.location = {0.5, 0, 0};
    g.width = 0.06;
    TestDistribution cosine;
    cosine.kind = Kind::plane_wave;
    cosine.wave = {3, 0, 0};
    CutoffWindow w(1, {0.5, 0, 0}, 0.1, 0.3);
    ProductReport r = local_product({g, std::nullopt, "g"}, {cosine, std::nullopt, "e3"}, w, 120, 200);
    SampledField back = synthesize(r.conv.product, make_grid(1, 256));
    for (std::size_t k = 0; k < 256; ++k) {
        double x = back.grid.point(k)[0];
        if (std::fabs(x - 0.5) <= 0.1) {
            cplx want = std::exp(-(x - 0.5) * (x - 0.5) / (2 * 0.06 * 0.06)) *
                        std::polar(1.0, 2 * std::numbers::pi * 3 * x);
            CHECK(std::abs(back.values[k] - want) < 1e-8);
        }
    }
}

TEST_CASE("delta times a smooth function scales the delta") {
    TestDistribution d;
    d.location = {0.5, 0, 0};
    TestDistribution g;
    g.kind = Kind::gaussian;
    g.location = {0.45, 0, 0};
    g.width = 0.08;
    CutoffWindow w(1, {0.5, 0, 0}, 0.1, 0.3);
    ProductReport r = local_product({d, std::nullopt, "delta"}, {g, std::nullopt, "g"}, w, 32, 512);
    // phi(x0) = 1, so phi delta * phi g = phi(x0)^2 g(x0) delta on the coefficient side
    double c = std::exp(-0.05 * 0.05 / (2 * 0.08 * 0.08));
    CoeffArray ref = exact_coeffs(d, 32);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(r.conv.product[i] - c * ref[i]) < 1e-6);
}

TEST_CASE("Young bound edge cases") {
    CoeffArray e(1, 0);
    e[0] = 1.0;
    YoungReport r = young_bound_check(e, e, Weight::polynomial(-1), Weight::polynomial(1), 1, 1);
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.holds);
    // unweighted l1 is sub-multiplicative with constant 1
    std::mt19937_64 rng(26);
    for (int t = 0; t < 10; ++t) {
        CoeffArray a = random_band(1, 10, rng), b = random_band(1, 10, rng);
        YoungReport u = young_bound_check(a, b, Weight::polynomial(0), Weight::polynomial(0), 1, 1);
        CHECK(u.constant == 1.0);
        CHECK(u.lhs <= u.norm1 * u.norm2 * (1 + 1e-12));
    }
    CHECK_THROWS(young_bound_check(e, e, Weight::polynomial(2), Weight::polynomial(0), 1, 1));
    CHECK_THROWS(young_bound_check(e, e, Weight::polynomial(0), Weight::polynomial(0), 3, 3));
}

TEST_CASE("local products from two windows agree where both plateaus hold") {
    TestDistribution g;
    g.kind = Kind::gaussian;
    g.location = {0.52, 0, 0};
    g.width = 0.07;
    TestDistribution k;
    k.kind = Kind::plane_wave;
    k.wave = {-2, 0, 0};
    CutoffWindow a(1, {0.5, 0, 0}, 0.1, 0.3), b(1, {0.56, 0, 0}, 0.08, 0.28);
    auto product_on = [&](const CutoffWindow& w) {
        return synthesize(local_product({g, std::nullopt, "g"}, {k, std::nullopt, "e"}, w, 200, 320).conv.product,
                          make_grid(1, 512));
    };
    SampledField pa = product_on(a), pb = product_on(b);
    int checked = 0;
    for (std::size_t i = 0; i < 512; ++i) {
        Point x = pa.grid.point(i);
        if (a.in_plateau(x) && b.in_plateau(x)) {
            CHECK(std::abs(pa.values[i] - pb.values[i]) < 1e-8);
            ++checked;
        }
    }
    CHECK(checked > 20);
}
