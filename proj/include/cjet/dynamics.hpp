#ifndef CJET_DYNAMICS_HPP
#define CJET_DYNAMICS_HPP

#include <string>
#include <vector>

#include "cjet/dno.hpp"
#include "cjet/grid.hpp"

namespace cjet {

enum class MollifierMode { flat, full };

/// The pair (eta, psi) at one instant.  On the torus the gravity term g z is
/// not periodic, so psi is stored as (periodic part, declared linear offset
/// with slope s): the full trace is psi(z) + s z.
struct JetState {
    double t = 0.0;
    RealField eta;
    RealField psi;
    double psi_slope = 0.0;
    double radius = 1.0;
    double kappa = 1.0;
    double gravity = 0.0;
};

struct StepOptions {
    DnoOptions solver;
    bool dealias_rhs = true;
    double mollify_step_eps = 0.0; // per-step smoothing of the evolved fields
    double mollify_rhs_eps = 0.0;  // J_eps applied to the tendencies
    MollifierMode mollify_mode = MollifierMode::flat;
    double pinch_floor = 1e-6;     // fraction of R below which we halt
};

struct RhsResult {
    RealField eta_t;
    RealField psi_t;   // tendency of the periodic part
    double slope_t;    // ds/dt (= g in gravity mode)
};

/// Full DN trace G[eta](psi + s z) = G[eta](psi) - s eta_z.  Uses the exact
/// flat multiplier when eta is constant to machine precision.
RealField dn_for_state(const JetState& state, const StepOptions& opt = {});

/// Zakharov tendencies:
///   eta_t = G[eta](psi_full)
///   psi_t = -|psi_z|^2/2 + (eta_z psi_z + G)^2 / (2(1+eta_z^2)) + kappa(H(eta)+1/(2R))
/// with the gravity forcing routed through the slope (ds/dt = g).
RhsResult rhs(const JetState& state, const StepOptions& opt = {});

/// Classical 4-stage Runge-Kutta update.  Throws StepRejected if the surface
/// crosses the pinch-off floor mid-stage.
JetState step_rk4(const JetState& state, double dt, const StepOptions& opt = {});

/// Spectral smoothing: flat mode applies exp(-eps |xi|^{3/2}/sqrt(2)); full
/// mode applies the paradifferential quantization of exp(-eps gamma^{3/2}).
RealField mollify(const RealField& u, double eps, const RealField& eta, MollifierMode mode);

/// Capillary CFL bound dt = cfl * sqrt(2/kappa) * xi_max^{-3/2}.
double auto_cfl_dt(const GridSpec& g, double kappa, double cfl);

struct DiagnosticsRow {
    double t = 0.0;
    double energy = 0.0;
    double min_eta = 0.0;
    double hs_eta = 0.0; // H^s norm of eta - R
    double hs_psi = 0.0; // H^s norm of the periodic psi part
    std::vector<double> mode_amps;
};

struct TrajectorySnapshot {
    double t = 0.0;
    RealField eta;
    RealField psi;
    double slope = 0.0;
};

enum class RunOutcome { Completed, PinchOff };

struct Trajectory {
    std::vector<TrajectorySnapshot> snapshots;
    std::vector<DiagnosticsRow> diagnostics;
    RunOutcome outcome = RunOutcome::Completed;
    double stop_time = 0.0;
    double radius = 1.0;
    double kappa = 1.0;
    double gravity = 0.0;
    double sobolev_index = 3.0;
    std::vector<int> tracked_modes;
};

struct RunSpec {
    JetState initial;
    double dt = 0.0;      // 0 means auto-CFL
    double cfl = 0.5;
    double horizon = 0.0;
    int save_every = 1;   // steps between saved snapshots/diagnostics
    StepOptions step;
    double sobolev_index = 3.0;
    std::vector<int> tracked_modes;
};

/// Integrate with step_rk4, recording diagnostics; stops early with a
/// PinchOff outcome when min(eta) reaches the floor.
Trajectory run(const RunSpec& spec);

/// Frame change mapping a g = 0 trajectory to the gravity solution:
///   eta^g(t,z) = eta(t, z - g t^2/2),
///   psi^g(t,z) = psi(t, z - g t^2/2) + g t z - g^2 t^3/6.
/// Shifts are spectral; the g t z part lands in the declared slope.
Trajectory gravity_transform(const Trajectory& source, double g);

} // namespace cjet

#endif
