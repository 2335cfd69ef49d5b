#include "cjet/linstab.hpp"

#include <algorithm>
#include <cmath>

#include "cjet/errors.hpp"

namespace cjet {

DispersionSample growth_rate(double radius, double kappa, double xi) {
    if (!(radius > 0.0)) throw NonpositiveRadius("growth_rate needs R > 0");
    if (kappa < 0.0) throw ConfigError("kappa must be nonnegative");
    DispersionSample s;
    s.xi = xi;
    double m = flat_multiplier(radius, xi);
    s.sigma_sq = kappa * m * (1.0 / (2.0 * radius * radius) - 0.5 * xi * xi);
    s.sigma = s.sigma_sq >= 0.0 ? Complex(std::sqrt(s.sigma_sq), 0.0)
                                : Complex(0.0, std::sqrt(-s.sigma_sq));
    return s;
}

MostUnstable most_unstable(double radius, double kappa) {
    if (!(radius > 0.0)) throw NonpositiveRadius("most_unstable needs R > 0");
    if (!(kappa > 0.0)) throw ConfigError("most_unstable needs kappa > 0");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = 1.0 / radius;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = growth_rate(radius, kappa, c).sigma_sq;
    double fd = growth_rate(radius, kappa, d).sigma_sq;
    const double tol = 1e-8 / radius;
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = growth_rate(radius, kappa, c).sigma_sq;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = growth_rate(radius, kappa, d).sigma_sq;
        }
    }
    MostUnstable out;
    out.xi_star = 0.5 * (a + b);
    out.sigma_star = std::sqrt(std::max(0.0, growth_rate(radius, kappa, out.xi_star).sigma_sq));
    return out;
}

double measure_growth(const Trajectory& traj, int mode, double lo, double hi) {
    auto it = std::find(traj.tracked_modes.begin(), traj.tracked_modes.end(), mode);
    if (it == traj.tracked_modes.end())
        throw ConfigError("requested mode was not tracked in the trajectory");
    size_t col = static_cast<size_t>(it - traj.tracked_modes.begin());
    if (traj.diagnostics.empty()) throw WindowTooShort("empty trajectory");

    double a0 = traj.diagnostics.front().mode_amps[col];
    if (lo < 0.0) lo = 10.0 * a0;
    if (hi < 0.0) hi = 1e-2 * traj.radius;

    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    int n = 0;
    for (const DiagnosticsRow& row : traj.diagnostics) {
        double amp = row.mode_amps[col];
        if (amp < lo || amp > hi || amp <= 0.0) continue;
        double y = std::log(amp);
        st += row.t;
        sy += y;
        stt += row.t * row.t;
        sty += row.t * y;
        ++n;
    }
    if (n < 10) throw WindowTooShort("fewer than 10 samples in the fit window");
    double denom = n * stt - st * st;
    return (n * sty - st * sy) / denom;
}

} // namespace cjet
