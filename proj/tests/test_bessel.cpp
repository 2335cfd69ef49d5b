#include <doctest.h>

#include <cmath>

#include "cjet/bessel.hpp"
#include "cjet/errors.hpp"
#include "oracles.hpp"

using namespace cjet::bessel;

TEST_CASE("i0 and i1 basics") {
    CHECK(i0(0.0) == 1.0);
    CHECK(i1(0.0) == 0.0);

    // quadrature oracle for the integral representation
    for (double x : {0.3, 1.0, 4.7, 15.0}) {
        double expect = oracle::i0_quadrature(x);
        CHECK(i0(x) == doctest::Approx(expect).epsilon(1e-13));
        CHECK(i0(-x) == doctest::Approx(expect).epsilon(1e-13)); // even
    }
    CHECK(i1(2.0) == doctest::Approx(-i1(-2.0)).epsilon(1e-15)); // odd

    CHECK_THROWS_AS(i0(701.0), cjet::Overflow);
    CHECK_THROWS_AS(i1(-701.0), cjet::Overflow);
    CHECK(std::isfinite(i0(699.0)));
}

TEST_CASE("series/asymptotic crossover continuity") {
    // step small enough that the function's own variation is << 1e-12 rel
    const double d = 1e-13;
    double below = i0_scaled(kCrossover - d);
    double above = i0_scaled(kCrossover + d);
    CHECK(std::abs(below - above) < 1e-12 * below);
    double b1 = i1_scaled(kCrossover - d);
    double a1 = i1_scaled(kCrossover + d);
    CHECK(std::abs(b1 - a1) < 1e-12 * b1);
}

TEST_CASE("derivative family") {
    CHECK(i0_deriv(0, 1.3) == doctest::Approx(i0(1.3)).epsilon(1e-15));
    CHECK(i0_deriv(1, 1.3) == doctest::Approx(i1(1.3)).epsilon(1e-15));

    // d/dx i0 = i1 by central differences
    for (double x : {0.1, 0.7, 3.0, 12.0, 20.0}) {
        double h = 1e-6 * std::max(1.0, x);
        double fd = (i0(x + h) - i0(x - h)) / (2 * h);
        CHECK(fd == doctest::Approx(i1(x)).epsilon(1e-8));
    }

    // k = 2 against a second difference of i0
    for (double x : {0.5, 2.0, 9.0}) {
        double h = 3e-5 * std::max(1.0, x);
        double fd2 = (i0(x + h) - 2 * i0(x) + i0(x - h)) / (h * h);
        CHECK(i0_deriv(2, x) == doctest::Approx(fd2).epsilon(1e-6));
    }

    // parity: even k even, odd k odd
    CHECK(i0_deriv(2, -3.0) == doctest::Approx(i0_deriv(2, 3.0)).epsilon(1e-15));
    CHECK(i0_deriv(3, -3.0) == doctest::Approx(-i0_deriv(3, 3.0)).epsilon(1e-15));

    CHECK_THROWS(i0_deriv(7, 1.0));
}

TEST_CASE("ratio i1/i0") {
    CHECK(ratio_i1_i0(0.0) == 0.0);

    // continued-fraction oracle
    for (double x : {0.05, 0.5, 1.0, 5.0, 19.0, 21.0, 80.0, 300.0}) {
        CHECK(ratio_i1_i0(x) == doctest::Approx(oracle::ratio_i1_i0_cf(x)).epsilon(1e-13));
        CHECK(ratio_i1_i0(-x) == doctest::Approx(-ratio_i1_i0(x)).epsilon(1e-15));
    }

    // monotone increasing, bounded by 1
    double prev = -1.0;
    for (double x = 0.0; x <= 50.0; x += 0.5) {
        double r = ratio_i1_i0(x);
        CHECK(r > prev);
        CHECK(r < 1.0);
        prev = r;
    }

    // large-x asymptotics: ratio(700) within 1e-3 of 1 - 1/(2*700)
    CHECK(std::abs(ratio_i1_i0(700.0) - (1.0 - 1.0 / 1400.0)) < 1e-3);
    CHECK(std::isfinite(ratio_i1_i0(1e8)));
}

TEST_CASE("ratio_i0k") {
    for (double x : {0.5, 3.0, 40.0, 500.0}) {
        CHECK(ratio_i0k(0, 1.0, x) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(ratio_i0k(0, 0.0, x) ==
              doctest::Approx(1.0 / (std::exp(x) * i0_scaled(x))).epsilon(1e-12));
    }

    // |ratio|^2 <= |I0(x)|^{-2(1-y)} on a small lattice
    for (int k = 0; k <= 4; ++k)
        for (double y : {0.1, 0.5, 0.9, 1.0})
            for (double x : {0.5, 5.0, 30.0}) {
                double r = ratio_i0k(k, y, x);
                double log_i0 = x + std::log(i0_scaled(x));
                CHECK(r * r <= std::exp(-2.0 * (1.0 - y) * log_i0) * (1.0 + 1e-10));
            }

    // integral bounds (quadrature oracle)
    for (int k : {0, 2, 4})
        for (double x : {0.1, 1.0, 10.0, 100.0}) {
            auto f = [&](double y) {
                double v = ratio_i0k(k, y, x);
                return v * v;
            };
            double integral = oracle::adaptive_simpson(f, 0.0, 1.0, 1e-11);
            CHECK(integral <= 1.0 + 1e-10);
            CHECK(x * integral <= 3.0 + 1e-9);
        }
}
