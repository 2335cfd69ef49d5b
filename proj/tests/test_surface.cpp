#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cjet/dno.hpp"
#include "cjet/errors.hpp"
#include "cjet/surface.hpp"
#include "oracles.hpp"

using namespace cjet;
using std::numbers::pi;

TEST_CASE("curvature of the straight cylinder") {
    for (double R : {0.5, 1.0, 3.0}) {
        GridPtr g = make_grid(pi, 32);
        RealField h = mean_curvature(RealField(g, R));
        for (int j = 0; j < g->size(); ++j)
            CHECK(h[j] == doctest::Approx(-0.5 / R).epsilon(1e-14));
    }
    GridPtr g = make_grid(pi, 32);
    CHECK_THROWS_AS(mean_curvature(RealField(g, -1.0)), NonpositiveRadius);
}

TEST_CASE("sphere cap curvature oracle") {
    // Sphere of radius rho centred mid-domain; C-infinity blend to a constant
    // outside the central third so spectral derivatives stay accurate there.
    const double rho = 3.0, L = 1.0;
    GridPtr g = make_grid(L, 512);
    auto bump = [](double t) { // smooth 0 -> 1 transition on [0, 1]
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0;
        double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
        return a / (a + b);
    };
    RealField eta(g);
    const double edge_radius = std::sqrt(rho * rho - 1.0);
    for (int j = 0; j < g->size(); ++j) {
        double s = g->node(j) - L; // in [-1, 1)
        double sphere = std::sqrt(rho * rho - s * s);
        double w = bump((0.85 - std::abs(s)) / 0.45); // 1 for |s| <= 0.4, 0 for |s| >= 0.85
        eta[j] = w * sphere + (1.0 - w) * edge_radius;
    }
    RealField h = mean_curvature(eta);
    for (int j = 0; j < g->size(); ++j) {
        double s = g->node(j) - L;
        if (std::abs(s) <= L / 3.0)
            CHECK(h[j] == doctest::Approx(-1.0 / rho).epsilon(2e-6));
    }
}

TEST_CASE("curvature linearization") {
    GridPtr g = make_grid(pi, 64);
    const double R = 1.0, a = 1e-5;
    for (int k : {1, 2, 3}) {
        RealField eta(g, R);
        for (int j = 0; j < g->size(); ++j) eta[j] += a * std::cos(k * g->node(j));
        RealField h = mean_curvature(eta);
        // fitted cos(kz) coefficient of (H + 1/(2R))/a
        double coef = 0.0;
        for (int j = 0; j < g->size(); ++j)
            coef += (h[j] + 0.5 / R) * std::cos(k * g->node(j));
        coef *= 2.0 * g->dz() / (2.0 * g->half_period()) / a;
        double expect = -0.5 * k * k + 0.5 / (R * R);
        CHECK(coef == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("surface pressure") {
    GridPtr g = make_grid(pi, 64);
    const double R = 1.0;
    RealField p0 = surface_pressure(RealField(g, R), R, 1.0);
    CHECK(l2_norm(p0) < 1e-13);

    RealField eta(g, R);
    for (int j = 0; j < g->size(); ++j) eta[j] += 0.1 * std::cos(g->node(j));
    CHECK(l2_norm(surface_pressure(eta, R, 0.0)) == 0.0);

    const double a = 1e-6, kappa = 2.0;
    int k = 2;
    RealField eta2(g, R);
    for (int j = 0; j < g->size(); ++j) eta2[j] += a * std::cos(k * g->node(j));
    RealField p = surface_pressure(eta2, R, kappa);
    double coef = 0.0;
    for (int j = 0; j < g->size(); ++j) coef += p[j] * std::cos(k * g->node(j));
    coef *= 2.0 * g->dz() / (2.0 * g->half_period()) / a;
    CHECK(coef == doctest::Approx(-kappa * (0.5 / (R * R) - 0.5 * k * k)).epsilon(1e-5));
}

TEST_CASE("hamiltonian energy") {
    GridPtr g = make_grid(pi, 64);
    const double R = 1.0, kappa = 1.0;

    CHECK(hamiltonian_energy(RealField(g, R), RealField(g), RealField(g), R, kappa) == 0.0);

    // psi = 0: compare against a trapezoid oracle with the analytic derivative
    const double a = 0.05;
    const int k = 2;
    RealField eta(g, R);
    for (int j = 0; j < g->size(); ++j) eta[j] += a * std::cos(k * g->node(j));
    double e = hamiltonian_energy(eta, RealField(g), RealField(g), R, kappa);
    double quad = 0.0;
    for (int j = 0; j < g->size(); ++j) {
        double z = g->node(j);
        double ev = R + a * std::cos(k * z);
        double ez = -a * k * std::sin(k * z);
        quad += (ev * (std::sqrt(1.0 + ez * ez) - 1.0) -
                 (ev - R) * (ev - R) / (2.0 * R)) * g->dz();
    }
    CHECK(e == doctest::Approx(pi * kappa * quad).epsilon(1e-12));
    CHECK(e > 0.0); // kR = 2 is the stable side

    // kinetic positivity for random smooth psi on a curved surface
    RealField psi(g);
    for (int j = 0; j < g->size(); ++j)
        psi[j] = 0.3 * std::sin(g->node(j)) + 0.2 * std::cos(3.0 * g->node(j));
    DnoOptions opt;
    opt.cells = 128;
    RealField gpsi = dn_general(eta, psi, opt);
    double kinetic = pi * integrate(psi * eta * gpsi);
    CHECK(kinetic > 0.0);
}

TEST_CASE("area integrand and parity") {
    GridPtr g = make_grid(pi, 64);
    RealField eta(g, 1.0);
    for (int j = 0; j < g->size(); ++j) eta[j] += 0.2 * std::cos(2.0 * g->node(j));

    // H(eta) even in z when eta is even
    RealField h = mean_curvature(eta);
    SpectralField spec = transform_forward(h);
    for (int k = 0; k < g->size(); ++k) CHECK(std::abs(spec[k].imag()) < 1e-12);

    // area integrand matches the analytic derivative formula
    RealField a = area_integrand(eta);
    for (int j = 0; j < g->size(); ++j) {
        double z = g->node(j);
        double ev = 1.0 + 0.2 * std::cos(2.0 * z);
        double ez = -0.4 * std::sin(2.0 * z);
        CHECK(a[j] == doctest::Approx(ev * std::sqrt(1.0 + ez * ez)).epsilon(1e-10));
    }
}
