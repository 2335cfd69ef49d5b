// Test-only oracles, kept independent of the library paths they check.
#ifndef CJET_TESTS_ORACLES_HPP
#define CJET_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// Adaptive Simpson quadrature with Richardson correction.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 26) {
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double acc,
            int level) -> double {
        double mid = 0.5 * (lo + hi);
        double fl = f(0.5 * (lo + mid)), fr = f(0.5 * (mid + hi));
        double left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid);
        double right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi);
        if (level <= 0 || std::abs(left + right - acc) < 15.0 * tol)
            return left + right + (left + right - acc) / 15.0;
        return rec(lo, mid, flo, fl, fmid, left, level - 1) +
               rec(mid, hi, fmid, fr, fhi, right, level - 1);
    };
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, depth);
}

// I0 by quadrature of (1/pi) int_0^pi e^{x cos t} dt.
inline double i0_quadrature(double x) {
    return adaptive_simpson([x](double t) { return std::exp(x * std::cos(t)); }, 0.0,
                            std::acos(-1.0), 1e-15) /
           std::acos(-1.0);
}

// I1/I0 via the Gauss continued fraction for I_{nu+1}/I_nu; the fraction
// needs depth comfortably beyond |x| to converge.
inline double ratio_i1_i0_cf(double x) {
    if (x == 0.0) return 0.0;
    double ax = std::abs(x);
    int depth = static_cast<int>(2.5 * ax) + 80;
    double cf = 0.0;
    for (int nu = depth; nu >= 1; --nu) cf = ax * ax / (2.0 * (nu + 1.0) + cf);
    double r = ax / (2.0 + cf);
    return x < 0.0 ? -r : r;
}

inline double slope_fit(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace oracle

#endif
