#include "cjet/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cjet/errors.hpp"
#include "cjet/paradiff.hpp"
#include "cjet/surface.hpp"

namespace cjet {

namespace {

void check_floor(const JetState& s, double floor_frac) {
    if (!(min_value(s.eta) > floor_frac * s.radius))
        throw NonpositiveRadius("surface reached the pinch-off floor");
}

bool is_flat(const RealField& eta) {
    double lo = min_value(eta), hi = max_value(eta);
    return hi - lo <= 1e-13 * std::max(std::abs(hi), std::abs(lo));
}

} // namespace

RealField dn_for_state(const JetState& state, const StepOptions& opt) {
    RealField gp;
    if (is_flat(state.eta)) {
        gp = dn_flat(mean_value(state.eta), state.psi);
    } else {
        gp = dn_general(state.eta, state.psi, opt.solver);
    }
    if (state.psi_slope != 0.0) {
        RealField eta_z = derivative(state.eta);
        for (int j = 0; j < gp.size(); ++j) gp[j] -= state.psi_slope * eta_z[j];
    }
    return gp;
}

RhsResult rhs(const JetState& state, const StepOptions& opt) {
    check_floor(state, opt.pinch_floor);

    RealField g = dn_for_state(state, opt);
    RealField eta_z = derivative(state.eta);
    RealField psi_z = derivative(state.psi);
    if (state.psi_slope != 0.0)
        for (int j = 0; j < psi_z.size(); ++j) psi_z[j] += state.psi_slope;

    RealField h = mean_curvature(state.eta);
    const double half_inv_r = 1.0 / (2.0 * state.radius);

    RealField psi_t(state.eta.grid());
    for (int j = 0; j < psi_t.size(); ++j) {
        double num = eta_z[j] * psi_z[j] + g[j];
        psi_t[j] = -0.5 * psi_z[j] * psi_z[j] +
                   num * num / (2.0 * (1.0 + eta_z[j] * eta_z[j])) +
                   state.kappa * (h[j] + half_inv_r);
    }

    RhsResult out;
    out.eta_t = std::move(g);
    out.psi_t = std::move(psi_t);
    out.slope_t = state.gravity;

    if (opt.dealias_rhs) {
        out.eta_t = dealias(out.eta_t);
        out.psi_t = dealias(out.psi_t);
    }
    if (opt.mollify_rhs_eps > 0.0) {
        out.eta_t = mollify(out.eta_t, opt.mollify_rhs_eps, state.eta, opt.mollify_mode);
        out.psi_t = mollify(out.psi_t, opt.mollify_rhs_eps, state.eta, opt.mollify_mode);
    }
    return out;
}

JetState step_rk4(const JetState& state, double dt, const StepOptions& opt) {
    auto advanced = [&](const RhsResult& k, double h) {
        JetState s = state;
        s.t = state.t + h;
        s.eta += h * RealField(k.eta_t);
        s.psi += h * RealField(k.psi_t);
        s.psi_slope = state.psi_slope + h * k.slope_t;
        return s;
    };

    RhsResult k1 = rhs(state, opt);
    JetState next;
    try {
        RhsResult k2 = rhs(advanced(k1, 0.5 * dt), opt);
        RhsResult k3 = rhs(advanced(k2, 0.5 * dt), opt);
        RhsResult k4 = rhs(advanced(k3, dt), opt);

        next = state;
        next.t = state.t + dt;
        const double w = dt / 6.0;
        for (int j = 0; j < state.eta.size(); ++j) {
            next.eta[j] += w * (k1.eta_t[j] + 2.0 * k2.eta_t[j] + 2.0 * k3.eta_t[j] + k4.eta_t[j]);
            next.psi[j] += w * (k1.psi_t[j] + 2.0 * k2.psi_t[j] + 2.0 * k3.psi_t[j] + k4.psi_t[j]);
        }
        next.psi_slope += w * (k1.slope_t + 2.0 * k2.slope_t + 2.0 * k3.slope_t + k4.slope_t);
    } catch (const NonpositiveRadius& e) {
        throw StepRejected(std::string("stage hit the pinch-off floor: ") + e.what());
    }

    if (opt.mollify_step_eps > 0.0) {
        // Smooth the perturbation parts so the mean radius is untouched even
        // in full (paradifferential) mode, whose low-frequency cut is zero.
        RealField de = next.eta;
        for (int j = 0; j < de.size(); ++j) de[j] -= next.radius;
        de = mollify(de, opt.mollify_step_eps, next.eta, opt.mollify_mode);
        for (int j = 0; j < de.size(); ++j) next.eta[j] = next.radius + de[j];
        next.psi = mollify(next.psi, opt.mollify_step_eps, next.eta, opt.mollify_mode);
    }
    return next;
}

RealField mollify(const RealField& u, double eps, const RealField& eta, MollifierMode mode) {
    if (eps < 0.0) throw ConfigError("mollifier strength must be nonnegative");
    if (eps == 0.0 && mode == MollifierMode::flat) return u;
    if (mode == MollifierMode::flat) {
        const double c = eps / std::sqrt(2.0);
        return apply_multiplier(u, [c](double xi) {
            return Complex(std::exp(-c * std::pow(std::abs(xi), 1.5)));
        });
    }
    SeparableSymbol j_eps = mollifier_symbol(eta, eps);
    return paraop_apply(j_eps, u);
}

double auto_cfl_dt(const GridSpec& g, double kappa, double cfl) {
    if (!(kappa > 0.0)) throw ConfigError("auto-CFL needs kappa > 0; set dt explicitly");
    double xi_max = std::numbers::pi * (g.size() / 2) / g.half_period();
    return cfl * std::sqrt(2.0 / kappa) * std::pow(xi_max, -1.5);
}

namespace {

DiagnosticsRow make_diagnostics(const JetState& s, const StepOptions& opt,
                                double sobolev_index, const std::vector<int>& modes) {
    DiagnosticsRow row;
    row.t = s.t;
    row.min_eta = min_value(s.eta);

    // A pinched final state can no longer support the elliptic solve; the
    // remaining diagnostics stay meaningful, so record energy as NaN there.
    try {
        RealField gp;
        if (is_flat(s.eta)) {
            gp = dn_flat(mean_value(s.eta), s.psi);
        } else {
            gp = dn_general(s.eta, s.psi, opt.solver);
        }
        row.energy = hamiltonian_energy(s.eta, s.psi, gp, s.radius, s.kappa);
    } catch (const NonpositiveRadius&) {
        row.energy = std::numeric_limits<double>::quiet_NaN();
    }

    RealField tilde = s.eta;
    for (int j = 0; j < tilde.size(); ++j) tilde[j] -= s.radius;
    row.hs_eta = sobolev_norm(tilde, sobolev_index);
    row.hs_psi = sobolev_norm(s.psi, sobolev_index);

    SpectralField spec = transform_forward(tilde);
    row.mode_amps.reserve(modes.size());
    for (int m : modes) row.mode_amps.push_back(std::abs(spec.mode(m)));
    return row;
}

} // namespace

Trajectory run(const RunSpec& spec) {
    if (spec.horizon < 0.0) throw ConfigError("horizon must be nonnegative");
    if (spec.save_every < 1) throw ConfigError("save cadence must be >= 1");

    Trajectory traj;
    traj.radius = spec.initial.radius;
    traj.kappa = spec.initial.kappa;
    traj.gravity = spec.initial.gravity;
    traj.sobolev_index = spec.sobolev_index;
    traj.tracked_modes = spec.tracked_modes;

    JetState state = spec.initial;
    check_floor(state, spec.step.pinch_floor);

    auto record = [&](const JetState& s) {
        traj.snapshots.push_back({s.t, s.eta, s.psi, s.psi_slope});
        traj.diagnostics.push_back(
            make_diagnostics(s, spec.step, spec.sobolev_index, spec.tracked_modes));
    };
    record(state);

    if (spec.horizon == 0.0) {
        traj.stop_time = state.t;
        return traj;
    }

    double dt = spec.dt > 0.0 ? spec.dt
                              : auto_cfl_dt(*state.eta.grid(), state.kappa, spec.cfl);
    long nsteps = static_cast<long>(std::ceil(spec.horizon / dt - 1e-12));
    dt = spec.horizon / static_cast<double>(nsteps);

    for (long step = 1; step <= nsteps; ++step) {
        try {
            state = step_rk4(state, dt, spec.step);
        } catch (const StepRejected&) {
            traj.outcome = RunOutcome::PinchOff;
            traj.stop_time = state.t;
            return traj;
        }
        if (!(min_value(state.eta) > spec.step.pinch_floor * state.radius)) {
            traj.outcome = RunOutcome::PinchOff;
            traj.stop_time = state.t;
            record(state);
            return traj;
        }
        if (step % spec.save_every == 0 || step == nsteps) record(state);
    }
    traj.stop_time = state.t;
    return traj;
}

Trajectory gravity_transform(const Trajectory& source, double g) {
    if (source.gravity != 0.0)
        throw ConfigError("gravity transform expects a g = 0 source trajectory");

    Trajectory out = source;
    out.gravity = g;
    for (size_t i = 0; i < source.snapshots.size(); ++i) {
        const TrajectorySnapshot& s = source.snapshots[i];
        double t = s.t;
        double shift = 0.5 * g * t * t;
        TrajectorySnapshot& o = out.snapshots[i];
        o.eta = shift_field(s.eta, shift);
        o.psi = shift_field(s.psi, shift);
        double offset = -g * g * t * t * t / 6.0;
        for (int j = 0; j < o.psi.size(); ++j) o.psi[j] += offset;
        o.slope = s.slope + g * t;

        DiagnosticsRow& row = out.diagnostics[i];
        row.min_eta = min_value(o.eta);
        RealField tilde = o.eta;
        for (int j = 0; j < tilde.size(); ++j) tilde[j] -= source.radius;
        row.hs_eta = sobolev_norm(tilde, source.sobolev_index);
        row.hs_psi = sobolev_norm(o.psi, source.sobolev_index);
        SpectralField spec = transform_forward(tilde);
        for (size_t m = 0; m < source.tracked_modes.size(); ++m)
            row.mode_amps[m] = std::abs(spec.mode(source.tracked_modes[m]));
        // energy kept from the source frame; kinetic energy is not invariant
        // under the accelerating frame change.
    }
    return out;
}

} // namespace cjet
