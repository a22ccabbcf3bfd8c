#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mlwf/coeffs.hpp"
#include "mlwf/spaces.hpp"

using namespace mlwf;

TEST_CASE("polynomial weight") {
    Weight w = Weight::polynomial(2);
    CHECK(w({0, 0, 0}, 2) == 1.0);
    CHECK(w({3, 4, 0}, 2) == doctest::Approx(26.0));
    CHECK(Weight::polynomial(-1)({1, 0, 0}, 1) == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("tabulated weight") {
    Weight w = Weight::tabulate(1, 4, [](const Index& n) { return 1.0 + n[0] * n[0]; });
    CHECK(w({-3, 0, 0}, 1) == 10.0);
    CHECK(w.radius() == 4);
    CHECK_THROWS(w({5, 0, 0}, 1));
    CHECK_THROWS(Weight::tabulated(1, 1, {1.0, 2.0}));
    CHECK_THROWS(Weight::tabulated(1, 1, {1.0, 0.0, 1.0}));
}

TEST_CASE("weighted norms") {
    CoeffArray a(1, 2);
    a.at({1, 0, 0}) = 3.0;
    a.at({-2, 0, 0}) = cplx{0, 4};
    Weight one = Weight::polynomial(0);
    CHECK(weighted_norm(a, one, 2) == doctest::Approx(5.0));
    CHECK(weighted_norm(a, one, 1) == doctest::Approx(7.0));
    CHECK(weighted_norm(a, one, INFINITY) == doctest::Approx(4.0));
    Weight w = Weight::polynomial(2);
    CHECK(weighted_norm(a, w, INFINITY) == doctest::Approx(20.0));
    // huge entries do not overflow the power sum
    CoeffArray big(1, 1);
    big[0] = 1e200;
    big[2] = 1e200;
    CHECK(weighted_norm(big, one, 2) == doctest::Approx(std::sqrt(2.0) * 1e200));
}

TEST_CASE("square wave lies in H^s exactly for s < 1/2") {
    TestDistribution d;
    d.kind = Kind::square_wave_1d;
    auto src = [&](int r) { return exact_coeffs(d, r); };
    CHECK(membership_estimate(src, Weight::polynomial(0.0), 2).verdict == Membership::convergent);
    CHECK(membership_estimate(src, Weight::polynomial(0.7), 2).verdict == Membership::divergent);
    CHECK(membership_estimate(src, Weight::polynomial(0.5), 2).verdict != Membership::convergent);
    TestDistribution k;
    k.kind = Kind::kink_1d;
    auto ks = [&](int r) { return exact_coeffs(k, r); };
    CHECK(membership_estimate(ks, Weight::polynomial(1.0), 2).verdict == Membership::convergent);
}

TEST_CASE("dual pairing evaluates a delta") {
    TestDistribution d;
    d.location = {0.3, 0, 0};
    CoeffArray delta = exact_coeffs(d, 12);
    // a trigonometric polynomial phi; <delta_x, phi> = phi(x)
    CoeffArray phi(1, 12);
    phi.at({2, 0, 0}) = 1.0;
    phi.at({-5, 0, 0}) = cplx{0.5, -0.25};
    cplx value = std::polar(1.0, 2 * std::numbers::pi * 2 * 0.3) +
                 cplx{0.5, -0.25} * std::polar(1.0, -2 * std::numbers::pi * 5 * 0.3);
    cplx got = dual_pairing(delta, phi);
    CHECK(got.real() == doctest::Approx(value.real()));
    CHECK(got.imag() == doctest::Approx(value.imag()));
}

TEST_CASE("Peetre constant for s = 2") {
    ModerateReport r = is_nu_moderate(Weight::polynomial(2), Weight::polynomial(2), 50, 1);
    CHECK(r.constant <= 2.0 + 1e-12);
    CHECK(r.constant == doctest::Approx(1.25));  // attained at m = n = 1
    CHECK(r.stable);
    // brute force on a small box
    double best = 0;
    for (int m = -6; m <= 6; ++m)
        for (int n = -6; n <= 6; ++n)
            best = std::max(best, (1.0 + (m + n) * (m + n)) / ((1.0 + m * m) * (1.0 + n * n)));
    CHECK(moderate_constant(Weight::polynomial(2), Weight::polynomial(2), 6, 1) == doctest::Approx(best));
}

TEST_CASE("exponential weight is not moderate w.r.t. a polynomial") {
    Weight ex = Weight::tabulate(2, 40, [](const Index& n) { return std::exp(0.5 * std::hypot(n[0], n[1])); });
    ModerateReport r = is_nu_moderate(ex, Weight::polynomial(3), 20, 2);
    CHECK_FALSE(r.stable);
    CHECK_THROWS(is_nu_moderate(ex, Weight::polynomial(3), 30, 2));
}

TEST_CASE("window coefficients and localization") {
    Grid g = make_grid(1, 512);
    CutoffWindow w = bump_window(g, {0.5, 0, 0}, 0.1, 0.3);
    CoeffArray wc = window_coefficients(w, g);
    CHECK(wc.radius() < 256);
    CHECK(wc.at({0, 0, 0}).real() > 0.2);
    // localizing the constant 1 gives the window itself
    CoeffArray one(1, wc.radius() + 10);
    one.at({0, 0, 0}) = 1.0;
    CoeffArray l = localize(one, w, g, 10);
    for (int n = -10; n <= 10; ++n) CHECK(std::abs(l.at({n, 0, 0}) - wc.at({n, 0, 0})) < 1e-15);
    // not enough input coefficients
    CHECK_THROWS_WITH_AS(localize(one, w, g, wc.radius() + 20), doctest::Contains("N_max"), std::invalid_argument);
}
