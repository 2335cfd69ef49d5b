#ifndef CJET_SURFACE_HPP
#define CJET_SURFACE_HPP

#include "cjet/grid.hpp"

namespace cjet {

/// Mean curvature of the surface of revolution r = eta(z):
///   H(eta) = d_z( eta_z / (2 sqrt(1+eta_z^2)) ) - 1 / (2 eta sqrt(1+eta_z^2)).
/// Sign convention has H(R) = -1/(2R) for the straight cylinder.
RealField mean_curvature(const RealField& eta);

/// Young-Laplace surface pressure P = -kappa/(2R) - kappa H(eta); zero at
/// the equilibrium eta == R.
RealField surface_pressure(const RealField& eta, double radius, double kappa);

/// Conserved energy
///   E = pi int psi eta G dz
///     + pi kappa int { eta (sqrt(1+eta_z^2) - 1) - (eta-R)^2/(2R) } dz,
/// with G = G[eta](psi) supplied by the caller.
double hamiltonian_energy(const RealField& eta, const RealField& psi,
                          const RealField& g, double radius, double kappa);

/// Surface-area integrand eta sqrt(1+eta_z^2) (area per unit angle).
RealField area_integrand(const RealField& eta);

} // namespace cjet

#endif
