#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

#include "cjet/dynamics.hpp"
#include "cjet/errors.hpp"
#include "cjet/linstab.hpp"
#include "oracles.hpp"

using namespace cjet;
using std::numbers::pi;

TEST_CASE("dispersion closed form") {
    CHECK(growth_rate(1.0, 1.0, 0.0).sigma == Complex(0.0));
    // neutral cutoff at xi = 1/R
    for (double R : {0.5, 1.0, 2.0}) {
        auto s = growth_rate(R, 1.0, 1.0 / R);
        CHECK(s.sigma_sq == 0.0);
    }

    // value against the continued-fraction Bessel oracle
    double x = 0.7;
    auto s = growth_rate(1.0, 1.0, x);
    double expect = x * oracle::ratio_i1_i0_cf(x) * (0.5 - 0.5 * x * x);
    CHECK(s.sigma_sq == doctest::Approx(expect).epsilon(1e-13));
    CHECK(s.sigma.real() == doctest::Approx(std::sqrt(expect)).epsilon(1e-13));
    CHECK(s.sigma.imag() == 0.0);

    // band structure: growth iff 0 < |xi| R < 1
    GridPtr g = make_grid(pi, 64);
    for (int k = 0; k < g->size(); ++k) {
        double xi = g->wavenumber(k);
        auto d = growth_rate(1.0, 1.0, xi);
        if (xi != 0.0 && std::abs(xi) < 1.0)
            CHECK(d.sigma_sq > 0.0);
        else
            CHECK(d.sigma_sq <= 0.0);
    }
}

TEST_CASE("most unstable mode") {
    MostUnstable mu = most_unstable(1.0, 1.0);

    // brute-force oracle via the continued fraction (step 1e-4 here;
    // acceptance scans at 1e-5)
    double best_x = 0.0, best_v = -1.0;
    for (double x = 1e-4; x < 1.0; x += 1e-4) {
        double v = x * (1.0 - x * x) * oracle::ratio_i1_i0_cf(x);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }
    CHECK(std::abs(mu.xi_star - best_x) < 0.005);
    CHECK(mu.xi_star == doctest::Approx(0.697).epsilon(0.01));

    // scaling invariances
    MostUnstable mu2 = most_unstable(2.0, 1.0);
    CHECK(std::abs(mu2.xi_star - mu.xi_star / 2.0) < 1e-8);
    MostUnstable muk = most_unstable(1.0, 4.0);
    CHECK(muk.sigma_star == doctest::Approx(2.0 * mu.sigma_star).epsilon(1e-10));
}

TEST_CASE("jacobian consistency oracle") {
    // Finite-difference Jacobian of rhs at (R, 0): eigenvalues must match
    // +/- sigma(xi_k) on all resolved low modes.
    const int n = 32;
    GridPtr g = make_grid(pi, n);
    StepOptions opt;
    opt.solver.cells = 64;
    opt.solver.tol = 1e-12;

    auto rhs_vec = [&](const Eigen::VectorXd& u) {
        JetState s;
        s.eta = RealField(g);
        s.psi = RealField(g);
        for (int j = 0; j < n; ++j) {
            s.eta[j] = u[j];
            s.psi[j] = u[n + j];
        }
        s.radius = 1.0;
        s.kappa = 1.0;
        RhsResult k = rhs(s, opt);
        Eigen::VectorXd out(2 * n);
        for (int j = 0; j < n; ++j) {
            out[j] = k.eta_t[j];
            out[n + j] = k.psi_t[j];
        }
        return out;
    };

    Eigen::VectorXd u0(2 * n);
    for (int j = 0; j < n; ++j) {
        u0[j] = 1.0;
        u0[n + j] = 0.0;
    }
    const double eps = 1e-6;
    Eigen::MatrixXd jac(2 * n, 2 * n);
    for (int c = 0; c < 2 * n; ++c) {
        Eigen::VectorXd up = u0, um = u0;
        up[c] += eps;
        um[c] -= eps;
        jac.col(c) = (rhs_vec(up) - rhs_vec(um)) / (2.0 * eps);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(jac, false);

    std::vector<Complex> expected;
    double scale = 0.0;
    for (int k = 0; k < n; ++k) {
        double xi = g->wavenumber(k);
        if (std::abs(xi) > 4.0) continue;
        Complex s = growth_rate(1.0, 1.0, xi).sigma;
        expected.push_back(s);
        expected.push_back(-s);
        scale = std::max(scale, std::abs(s));
    }
    std::vector<bool> used(2 * n, false);
    double worst = 0.0;
    for (const Complex& e : expected) {
        double best = 1e300;
        int bi = -1;
        for (int i = 0; i < 2 * n; ++i) {
            if (used[i]) continue;
            double d = std::abs(Complex(es.eigenvalues()[i]) - e);
            if (d < best) {
                best = d;
                bi = i;
            }
        }
        used[bi] = true;
        worst = std::max(worst, best / std::max(std::abs(e), scale));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("measure_growth") {
    GridPtr g = make_grid(pi, 16);
    Trajectory traj;
    traj.radius = 1.0;
    traj.tracked_modes = {1};

    // synthetic exponential growth
    const double rate = 0.31;
    for (int i = 0; i <= 120; ++i) {
        DiagnosticsRow row;
        row.t = 0.1 * i;
        row.mode_amps = {1e-4 * std::exp(rate * row.t)};
        traj.diagnostics.push_back(row);
    }
    CHECK(measure_growth(traj, 1) == doctest::Approx(rate).epsilon(1e-10));

    // too-short window
    Trajectory shorttraj;
    shorttraj.radius = 1.0;
    shorttraj.tracked_modes = {1};
    for (int i = 0; i < 5; ++i) {
        DiagnosticsRow row;
        row.t = i;
        row.mode_amps = {1e-3};
        shorttraj.diagnostics.push_back(row);
    }
    CHECK_THROWS_AS(measure_growth(shorttraj, 1), WindowTooShort);
    CHECK_THROWS_AS(measure_growth(traj, 7), ConfigError);
}
