#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cjet/grid.hpp"
#include "oracles.hpp"

using namespace cjet;
using std::numbers::pi;

namespace {

RealField random_field(const GridPtr& g, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    RealField f(g);
    for (int j = 0; j < g->size(); ++j) f[j] = gauss(rng);
    return f;
}

} // namespace

TEST_CASE("grid construction") {
    GridPtr g = make_grid(pi, 8);
    CHECK(g->dz() == doctest::Approx(pi / 4).epsilon(1e-15));
    CHECK(g->wavenumber(g->index_of_mode(-4)) == doctest::Approx(-4.0));
    CHECK(g->wavenumber(g->index_of_mode(3)) == doctest::Approx(3.0));
    CHECK(g->mode_index(g->nyquist_index()) == -4);

    CHECK_THROWS_AS(make_grid(pi, 7), OddPointCount);
    CHECK_THROWS_AS(make_grid(pi, 6), BadGrid);
    CHECK_THROWS_AS(make_grid(-1.0, 8), BadGrid);
    CHECK_THROWS_AS(make_grid(0.0, 8), BadGrid);

    // xi_k = pi k / L
    GridPtr g2 = make_grid(2 * pi, 256);
    CHECK(g2->wavenumber(127) == doctest::Approx(63.5).epsilon(1e-15));
}

TEST_CASE("transform round trip and Parseval") {
    GridPtr g = make_grid(1.7, 96);
    RealField u = random_field(g, 1);
    RealField back = transform_inverse(transform_forward(u));
    CHECK(l2_norm(back - u) / l2_norm(u) < 1e-12);

    // sum |u_j|^2 dz = 2L sum |c_k|^2
    SpectralField c = transform_forward(u);
    double phys = 0.0;
    for (int j = 0; j < g->size(); ++j) phys += u[j] * u[j] * g->dz();
    double spec = 0.0;
    for (int k = 0; k < g->size(); ++k) spec += std::norm(c[k]);
    spec *= 2.0 * g->half_period();
    CHECK(phys == doctest::Approx(spec).epsilon(1e-12));

    // Hermitian symmetry of real-field coefficients
    for (int k = 1; k < g->size() / 2; ++k)
        CHECK(std::abs(std::conj(c[k]) - c[g->size() - k]) < 1e-14);
}

TEST_CASE("multipliers") {
    GridPtr g = make_grid(pi, 64);
    RealField cosz(g), sinz(g), cos2z(g);
    for (int j = 0; j < g->size(); ++j) {
        double z = g->node(j);
        cosz[j] = std::cos(z);
        sinz[j] = std::sin(z);
        cos2z[j] = std::cos(2 * z);
    }

    RealField ident = apply_multiplier(cosz, [](double) { return Complex(1.0); });
    CHECK(l2_norm(ident - cosz) < 1e-13);

    RealField d = apply_multiplier(cosz, [](double xi) { return Complex(0.0, xi); });
    CHECK(l2_norm(d + sinz) < 1e-12);

    RealField absd = apply_multiplier(cos2z, [](double xi) { return Complex(std::abs(xi)); });
    RealField expect = 2.0 * RealField(cos2z);
    CHECK(l2_norm(absd - expect) < 1e-12);

    // linearity M(a u + b v) = a M(u) + b M(v)
    RealField u = random_field(g, 2), v = random_field(g, 3);
    Multiplier m = [](double xi) { return Complex(std::abs(xi), 0.3 * xi); };
    RealField lhs = apply_multiplier(2.0 * RealField(u) + (-0.7) * RealField(v), m);
    RealField rhs = 2.0 * apply_multiplier(u, m) + (-0.7) * apply_multiplier(v, m);
    CHECK(l2_norm(lhs - rhs) / l2_norm(rhs) < 1e-12);

    // real output demanded but multiplier not Hermitian
    CHECK_THROWS_AS(apply_multiplier(u, [](double xi) { return Complex(xi); }),
                    NonHermitianMultiplier);

    // derivative of a constant vanishes identically
    RealField c(g, 4.2);
    RealField dc = derivative(c);
    for (int j = 0; j < g->size(); ++j) CHECK(dc[j] == 0.0);

    // derivative zeroes the Nyquist mode
    RealField nyq(g);
    for (int j = 0; j < g->size(); ++j) nyq[j] = std::cos(32.0 * g->node(j));
    CHECK(l2_norm(derivative(nyq)) < 1e-12);
}

TEST_CASE("sobolev norm against quadrature oracle") {
    GridPtr g = make_grid(pi, 64);
    RealField zero(g);
    CHECK(sobolev_norm(zero, 2.5) == 0.0);

    RealField cosz(g);
    for (int j = 0; j < g->size(); ++j) cosz[j] = std::cos(g->node(j));
    // s = 0: norm^2 should equal int |u|^2 dz over the period (trapezoid oracle)
    double quad = 0.0;
    for (int j = 0; j < g->size(); ++j) quad += cosz[j] * cosz[j] * g->dz();
    CHECK(sobolev_norm(cosz, 0.0) == doctest::Approx(std::sqrt(quad)).epsilon(1e-12));
    // closed form sqrt(1/2) * sqrt(2L)
    CHECK(sobolev_norm(cosz, 0.0) ==
          doctest::Approx(std::sqrt(0.5) * std::sqrt(2 * pi)).epsilon(1e-12));
    // s = 1 weights the mode by (1+xi^2)
    CHECK(sobolev_norm(cosz, 1.0) ==
          doctest::Approx(std::sqrt(2.0) * sobolev_norm(cosz, 0.0)).epsilon(1e-12));
}

TEST_CASE("dealias 2/3 rule") {
    GridPtr g = make_grid(pi, 64); // cutoff at |m| > 64/3 = 21.33
    for (int k : {1, 10, 21}) {
        RealField u(g);
        for (int j = 0; j < g->size(); ++j) u[j] = std::cos(k * g->node(j));
        CHECK(l2_norm(dealias(u) - u) < 1e-13);
    }
    RealField hi(g);
    for (int j = 0; j < g->size(); ++j) hi[j] = std::cos(22 * g->node(j));
    CHECK(l2_norm(dealias(hi)) < 1e-13);
}

TEST_CASE("spectral shift") {
    GridPtr g = make_grid(pi, 64);
    double delta = 0.37;
    RealField u(g);
    for (int j = 0; j < g->size(); ++j) u[j] = std::cos(3.0 * g->node(j)) + 0.5;
    RealField shifted = shift_field(u, delta);
    for (int j = 0; j < g->size(); ++j)
        CHECK(shifted[j] == doctest::Approx(std::cos(3.0 * (g->node(j) - delta)) + 0.5)
                                .epsilon(1e-12));
}
