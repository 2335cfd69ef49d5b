#ifndef CJET_LINSTAB_HPP
#define CJET_LINSTAB_HPP

#include <complex>

#include "cjet/dynamics.hpp"

namespace cjet {

/// One point of the linearized spectrum at the equilibrium (R, 0):
///   sigma^2(xi) = kappa m(xi) (1/(2R^2) - xi^2/2),  m = flat DN multiplier.
/// sigma^2 > 0 (growth) exactly for 0 < |xi| R < 1.
struct DispersionSample {
    double xi = 0.0;
    double sigma_sq = 0.0;
    Complex sigma;
};

DispersionSample growth_rate(double radius, double kappa, double xi);

struct MostUnstable {
    double xi_star = 0.0;
    double sigma_star = 0.0;
};

/// Maximizes sigma^2 over (0, 1/R) by golden-section search; the
/// dimensionless maximizer x* = xi* R is parameter-free.
MostUnstable most_unstable(double radius, double kappa);

/// Least-squares slope of log|eta_hat_k(t)| over diagnostic samples with
/// amplitude in [lo, hi].  Defaults per the measurement contract:
/// lo = 10 x initial amplitude, hi = 1e-2 R.  Throws WindowTooShort when
/// fewer than 10 samples qualify.
double measure_growth(const Trajectory& traj, int mode, double lo = -1.0, double hi = -1.0);

} // namespace cjet

#endif
