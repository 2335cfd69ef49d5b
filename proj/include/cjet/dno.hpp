#ifndef CJET_DNO_HPP
#define CJET_DNO_HPP

#include <optional>
#include <vector>

#include "cjet/grid.hpp"

namespace cjet {

/// Discrete potential v(z_j, y_m) on the flattened strip [0,2L) x [0,1],
/// uniform levels y_m = m/M for m = 0..M.
class StripField {
public:
    StripField() = default;
    StripField(GridPtr grid, int cell_count);

    const GridPtr& grid() const { return grid_; }
    int cells() const { return cells_; }        // M
    int levels() const { return cells_ + 1; }   // M+1
    double y(int m) const { return static_cast<double>(m) / cells_; }

    double at(int m, int j) const { return values_[static_cast<size_t>(m) * grid_->size() + j]; }
    double& at(int m, int j) { return values_[static_cast<size_t>(m) * grid_->size() + j]; }
    const double* row(int m) const { return values_.data() + static_cast<size_t>(m) * grid_->size(); }
    double* row(int m) { return values_.data() + static_cast<size_t>(m) * grid_->size(); }

    RealField level(int m) const;
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

private:
    GridPtr grid_;
    int cells_ = 0;
    std::vector<double> values_;
};

/// Entries of A(z,y) = [[y eta^2, -y^2 eta eta_z], [-y^2 eta eta_z, y(1+y^2 eta_z^2)]]
/// sampled at the half levels y_{m+1/2} used by the solver cells.
struct CoefficientMatrixField {
    GridPtr grid;
    int cells = 0;
    std::vector<double> a11; // cells x N
    std::vector<double> a12;
    std::vector<double> a22;
};

struct TraceVelocities {
    RealField B; // radial surface velocity
    RealField V; // axial surface velocity
};

struct DnoOptions {
    int cells = 0;          // M; 0 means 2N
    double tol = 1e-10;
    int max_iterations = 0; // 0 means 10N
};

struct EllipticSolution {
    StripField v;
    int iterations = 0;
    double residual = 0.0;
};

/// Throws NonpositiveRadius if min(eta) is at or below the pinch-off floor
/// 1e-6 * mean(eta).
void require_positive_radius(const RealField& eta);

/// Flat-cylinder DN multiplier m(xi) = xi I1(R xi)/I0(R xi); even, m(0)=0,
/// 0 <= m <= |xi|, m = |xi| - 1/(2R) + O(1/|xi|).
double flat_multiplier(double radius, double xi);

RealField dn_flat(double radius, const RealField& psi);

/// Poisson-kernel extension: mode-by-mode product with I0(y R xi)/I0(R xi).
StripField harmonic_extension_flat(double radius, const RealField& psi, int cells);

CoefficientMatrixField assemble_coefficients(const RealField& eta, int cells);

/// Weak solution of -div(A grad v) = 0, v(.,1) = psi, dv/dy(.,0) = 0.
/// Spectral in z, P1 cells in y with midpoint coefficients; solved by PCG
/// preconditioned with the exact flat solve at mean(eta).  Optional
/// initial guess warm-starts the iteration.
EllipticSolution solve_elliptic(const RealField& eta, const RealField& psi,
                                const DnoOptions& opt = {},
                                const StripField* guess = nullptr);

struct DnResult {
    RealField g;
    StripField v;
    int iterations = 0;
    double residual = 0.0;
};

/// G[eta](psi) via the consistent variational boundary flux of the weak form,
/// divided by eta.
DnResult dn_general_full(const RealField& eta, const RealField& psi,
                         const DnoOptions& opt = {}, const StripField* guess = nullptr);

RealField dn_general(const RealField& eta, const RealField& psi,
                     const DnoOptions& opt = {});

/// B = (eta_z psi_z + G)/(1+eta_z^2), V = psi_z - B eta_z.
TraceVelocities trace_velocities(const RealField& eta, const RealField& psi,
                                 const RealField& g);

/// d_eta G[eta](psi).h = -G[eta](h B) - d_z(h V) - h B / eta.
RealField shape_derivative(const RealField& eta, const RealField& psi,
                           const RealField& h, const DnoOptions& opt = {});

/// Smoothness probe r = G[eta](B) + d_z V; one order smoother than either term.
RealField cancellation_probe(const RealField& eta, const RealField& psi,
                             const DnoOptions& opt = {});

/// The quadratic form of the scheme: iint grad(u) . A grad(v) dz dy with the
/// solver's cell quadrature (u, v strip fields on matching grids).
double strip_bilinear(const CoefficientMatrixField& A, const StripField& u,
                      const StripField& v);

} // namespace cjet

#endif
