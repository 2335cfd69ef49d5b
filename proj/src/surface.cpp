#include "cjet/surface.hpp"

#include <cmath>
#include <numbers>

#include "cjet/dno.hpp"
#include "cjet/errors.hpp"

namespace cjet {

RealField mean_curvature(const RealField& eta) {
    require_positive_radius(eta);
    RealField eta_z = derivative(eta);
    RealField slope_term(eta.grid());
    for (int j = 0; j < eta.size(); ++j)
        slope_term[j] = eta_z[j] / (2.0 * std::sqrt(1.0 + eta_z[j] * eta_z[j]));
    RealField h = derivative(slope_term);
    for (int j = 0; j < eta.size(); ++j)
        h[j] -= 1.0 / (2.0 * eta[j] * std::sqrt(1.0 + eta_z[j] * eta_z[j]));
    return h;
}

RealField surface_pressure(const RealField& eta, double radius, double kappa) {
    if (kappa < 0.0) throw ConfigError("surface tension must be nonnegative");
    if (!(radius > 0.0)) throw NonpositiveRadius("reference radius must be positive");
    if (kappa == 0.0) return RealField(eta.grid(), 0.0);
    RealField h = mean_curvature(eta);
    RealField p(eta.grid());
    for (int j = 0; j < eta.size(); ++j)
        p[j] = -kappa / (2.0 * radius) - kappa * h[j];
    return p;
}

double hamiltonian_energy(const RealField& eta, const RealField& psi,
                          const RealField& g, double radius, double kappa) {
    RealField kinetic = psi * eta * g;
    RealField eta_z = derivative(eta);
    RealField potential(eta.grid());
    for (int j = 0; j < eta.size(); ++j) {
        double d = eta[j] - radius;
        potential[j] = eta[j] * (std::sqrt(1.0 + eta_z[j] * eta_z[j]) - 1.0) -
                       d * d / (2.0 * radius);
    }
    return std::numbers::pi * (integrate(kinetic) + kappa * integrate(potential));
}

RealField area_integrand(const RealField& eta) {
    RealField eta_z = derivative(eta);
    RealField a(eta.grid());
    for (int j = 0; j < eta.size(); ++j)
        a[j] = eta[j] * std::sqrt(1.0 + eta_z[j] * eta_z[j]);
    return a;
}

} // namespace cjet
