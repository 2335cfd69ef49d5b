#include "cjet/bessel.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "cjet/errors.hpp"

namespace cjet::bessel {

namespace {

// Power series I0(x) = sum x^{2k} / (4^k (k!)^2), summed to relative 1e-17.
double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// I1(x) = (x/2) sum x^{2k} / (4^k (k+1)! k!).
double i1_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return 0.5 * x * sum;
}

// Large-x expansion of e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(nu)/x^k,
// a_k(nu) = prod_{j<=k} (4 nu^2 - (2j-1)^2) / (k! 8^k).  Truncated at the
// smallest term; at x = 20 that term is ~1e-16 of the sum.
double scaled_asymptotic(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 60; ++k) {
        double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * k * x);
        if (std::abs(term) >= std::abs(prev)) break; // divergent tail reached
        sum += term;
        prev = term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

struct GaussRule {
    std::array<double, 64> node;
    std::array<double, 64> weight;
};

// 64-node Gauss-Legendre rule on [-1,1] by Newton iteration on P_64.
const GaussRule& gauss64() {
    static const GaussRule rule = [] {
        GaussRule r{};
        const int n = 64;
        for (int i = 0; i < n / 2; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                pp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            r.node[i] = -x;
            r.node[n - 1 - i] = x;
            r.weight[i] = r.weight[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
        }
        return r;
    }();
    return rule;
}

// e^{-x} I0^{(k)}(x) = (1/pi) int_0^pi e^{x(cos t - 1)} cos^k t dt for x >= 0.
double i0_deriv_scaled_quadrature(int k, double x) {
    const auto& gl = gauss64();
    const double half = 0.5 * std::numbers::pi;
    double sum = 0.0;
    for (int i = 0; i < 64; ++i) {
        double theta = half * (gl.node[i] + 1.0);
        double c = std::cos(theta);
        sum += gl.weight[i] * std::exp(x * (c - 1.0)) * std::pow(c, k);
    }
    return sum * half / std::numbers::pi;
}

} // namespace

double i0_scaled(double x) {
    x = std::abs(x);
    if (x < kCrossover) return std::exp(-x) * i0_series(x);
    return scaled_asymptotic(0, x);
}

double i1_scaled(double x) {
    double ax = std::abs(x);
    double v = ax < kCrossover ? std::exp(-ax) * i1_series(ax) : scaled_asymptotic(1, ax);
    return x < 0.0 ? -v : v;
}

double i0(double x) {
    double ax = std::abs(x);
    if (ax > kOverflowGuard) throw Overflow("i0 overflows for |x| > 700; use scaled form");
    if (ax < kCrossover) return i0_series(ax);
    return std::exp(ax) * i0_scaled(ax);
}

double i1(double x) {
    double ax = std::abs(x);
    if (ax > kOverflowGuard) throw Overflow("i1 overflows for |x| > 700; use scaled form");
    double v = ax < kCrossover ? i1_series(ax) : std::exp(ax) * i1_scaled(ax);
    return x < 0.0 ? -v : v;
}

double i0_deriv_scaled(int k, double x) {
    if (k < 0 || k > 6) throw std::invalid_argument("i0_deriv supports 0 <= k <= 6");
    double ax = std::abs(x);
    double v;
    switch (k) {
        case 0: v = i0_scaled(ax); break;
        case 1: v = i1_scaled(ax); break;
        default: v = i0_deriv_scaled_quadrature(k, ax); break;
    }
    // I0^{(k)} is even in x for even k, odd for odd k.
    return (k % 2 == 1 && x < 0.0) ? -v : v;
}

double i0_deriv(int k, double x) {
    if (k < 0 || k > 6) throw std::invalid_argument("i0_deriv supports 0 <= k <= 6");
    if (std::abs(x) > kOverflowGuard)
        throw Overflow("i0_deriv overflows for |x| > 700; use scaled form");
    return std::exp(std::abs(x)) * i0_deriv_scaled(k, x);
}

double ratio_i1_i0(double x) {
    return i1_scaled(x) / i0_scaled(x);
}

double ratio_i0k(int k, double y, double x) {
    // I0^{(k)}(yx)/I0(x) = e^{-|x|(1-y)} * [e^{-y|x|} I0^{(k)}(yx)] / [e^{-|x|} I0(x)]
    double ax = std::abs(x);
    double numer = i0_deriv_scaled(k, y * ax);
    double denom = i0_scaled(ax);
    double v = std::exp(-ax * (1.0 - y)) * numer / denom;
    return (k % 2 == 1 && x < 0.0) ? -v : v;
}

} // namespace cjet::bessel
