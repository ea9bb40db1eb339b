#include <doctest.h>

#include <random>

#include "moduli/ball.hpp"

using namespace moduli;

namespace {

ComplexBall make_ball(double re, double im, double rad, mpfr_prec_t prec) {
    return {Real::from(re, prec), Real::from(im, prec), Mag(rad)};
}

// |center(a) - center(b)| <= rad(a) + rad(b) + slack
bool overlaps(const ComplexBall& a, const ComplexBall& b) { return !a.disjoint_from(b); }

}  // namespace

TEST_CASE("exact arithmetic stays exact") {
    auto a = ComplexBall::exact(3, 128);
    auto b = ComplexBall::exact(-5, 128);
    auto p = a * b + a - b;
    CHECK(p.rad().is_zero());
    CHECK(p.re().to_double() == doctest::Approx(-7.0));
    CHECK(p.im().is_zero());
}

TEST_CASE("product ball contains the true product") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int iter = 0; iter < 500; ++iter) {
        double xr = u(rng), xi = u(rng), yr = u(rng), yi = u(rng);
        auto x64 = make_ball(xr, xi, 1e-12, 64);
        auto y64 = make_ball(yr, yi, 1e-12, 64);
        auto x512 = make_ball(xr, xi, 0, 512);
        auto y512 = make_ball(yr, yi, 0, 512);
        CHECK(overlaps(x64 * y64, x512 * y512));
        CHECK(overlaps(x64 + y64, x512 + y512));
        CHECK(overlaps(x64 - y64, x512 - y512));
        if (yr * yr + yi * yi > 0.1) CHECK(overlaps(x64 / y64, x512 / y512));
    }
}

TEST_CASE("division by a ball containing zero throws") {
    auto num = ComplexBall::exact(1, 128);
    auto den = make_ball(1e-10, 0, 1e-5, 128);
    CHECK_THROWS_AS(num / den, precision_error);
}

TEST_CASE("pow matches repeated multiplication") {
    auto x = make_ball(1.25, -0.5, 1e-20, 256);
    auto p = x.pow(7);
    auto q = x;
    for (int i = 1; i < 7; ++i) q = q * x;
    CHECK(overlaps(p, q));
}

TEST_CASE("integer exclusion") {
    CHECK(make_ball(2.5, 0, 0.2, 128).excludes_all_integers());
    CHECK(!make_ball(3.0001, 0, 0.01, 128).excludes_all_integers());
    CHECK(make_ball(3.0, 5.0, 0.5, 128).excludes_all_integers());  // off the real axis

    mpz_class lo, hi;
    CHECK(make_ball(10.2, 0, 2.1, 128).possible_integers(lo, hi));
    CHECK(lo == 9);
    CHECK(hi == 12);
    CHECK(!make_ball(10.4, 0, 0.1, 128).possible_integers(lo, hi));
}

TEST_CASE("magnitude bounds bracket the true magnitude") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int iter = 0; iter < 200; ++iter) {
        double xr = u(rng), xi = u(rng);
        auto b = make_ball(xr, xi, 1e-9, 128);
        double mag = std::sqrt(xr * xr + xi * xi);
        CHECK(b.mag_lower().to_double() <= mag + 1e-8);
        CHECK(b.mag_upper().to_double() >= mag - 1e-8);
    }
}
