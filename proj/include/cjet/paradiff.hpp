#ifndef CJET_PARADIFF_HPP
#define CJET_PARADIFF_HPP

#include <vector>

#include "cjet/dno.hpp"
#include "cjet/grid.hpp"

namespace cjet {

/// Bony cutoffs: chi(theta,zeta) = 1 for |theta| <= eps1 |zeta|, 0 for
/// |theta| >= eps2 |zeta|; phi(zeta) = 0 for |zeta| <= 1/2, 1 for |zeta| >= 1.
/// Transitions are C^2 smoothsteps.
struct CutoffPair {
    double eps1 = 0.1;
    double eps2 = 0.5;

    double chi(double theta, double zeta) const;
    double phi(double zeta) const;
};

/// One term c(z) * m(xi) of a separable symbol.
struct SymbolTerm {
    RealField coeff;
    Multiplier mult;
};

/// a(z,xi) = sum_j c_j(z) m_j(xi), with a declared order in xi.
struct SeparableSymbol {
    GridPtr grid;
    std::vector<SymbolTerm> terms;
    double order = 0.0;

    Complex eval(int j, double xi) const; // pointwise a(z_j, xi)
};

/// Exact discrete frequency convolution of Definition-style quantization:
///   out(xi) = sum_zeta chi(xi-zeta,zeta) chat(xi-zeta) m(zeta) phi(zeta) uhat(zeta),
/// with frequency differences outside the resolved band dropped.  O(T N^2).
SpectralField paraop_apply_spectral(const SeparableSymbol& a, const RealField& u,
                                    const CutoffPair& cut = {});
RealField paraop_apply(const SeparableSymbol& a, const RealField& u,
                       const CutoffPair& cut = {});

/// Order-0 paraproduct symbol of a plain coefficient field.
SeparableSymbol coefficient_symbol(const RealField& c);

/// lambda = |xi| - (1 + 2 eta_z^2 + i eta_z^3 sgn(xi)) / (2 eta), order 1.
SeparableSymbol symbol_lambda(const RealField& eta);

struct EllSymbol {
    SeparableSymbol ell; // ell^(2) + ell^(1), order 2
    RealField ell0;      // ell^(0) = 1/(2 eta^2 sqrt(1+eta_z^2))
};
EllSymbol symbol_ell(const RealField& eta);

/// Alinhac good unknown U = psi - T_B eta.
RealField good_unknown(const RealField& eta, const RealField& psi,
                       const RealField& B, const CutoffPair& cut = {});

/// R_G = G[eta](psi) - T_lambda U + T_V d_z eta; one order smoother than G.
RealField paralin_residual(const RealField& eta, const RealField& psi,
                           const CutoffPair& cut = {}, const DnoOptions& opt = {});

struct SymmetrizerSymbols {
    SeparableSymbol p;     // p^(1/2) + p^(-1/2)
    SeparableSymbol q;     // order 0 (periodic factor)
    SeparableSymbol gamma; // gamma^(3/2) + gamma^(1/2)
    double q_slope = 0.0;  // declared exponent slope when (eta_z)^3/(6 eta) has
                           // nonzero mean: full q = q_periodic * exp(q_slope * z)
};

/// Symmetrizer symbols built from lambda and ell; the reference radius in q
/// is taken as mean(eta).
SymmetrizerSymbols symmetrizer_symbols(const RealField& eta);

/// Gaussian-windowed wave packet cos(K z) centred mid-domain.
RealField wave_packet(const GridPtr& grid, int carrier_mode);

struct SymmetrizerResidual {
    double r1;       // ||(T_p T_lambda - T_gamma T_q) u_K|| / ||u_K||
    double r2;       // ||(T_q T_ell - T_gamma T_p) u_K|| / ||u_K||
    double t_p_lam;  // ||T_p T_lambda u_K|| / ||u_K||, for order counting
};
SymmetrizerResidual symmetrizer_residual(const RealField& eta, const CutoffPair& cut,
                                         int probe_mode);

/// Rank-limited separable approximation of J_eps^(0) = exp(-eps gamma^(3/2)),
/// Chebyshev in w(z) = (1+eta_z^2)^{-3/4}/sqrt(2).
SeparableSymbol mollifier_symbol(const RealField& eta, double eps, int rank = 8);

/// Max pointwise error of the separable approximation over the grid lattice.
double mollifier_certify(const SeparableSymbol& approx, const RealField& eta, double eps);

} // namespace cjet

#endif
