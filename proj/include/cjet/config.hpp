#ifndef CJET_CONFIG_HPP
#define CJET_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cjet/dynamics.hpp"

namespace cjet {

struct ModeSpec {
    double amplitude = 0.0;
    int mode = 1;
    double phase = 0.0;
    bool random_phase = false;
};

/// Validated simulation configuration (JSON schema documented in the README).
struct SimConfig {
    double half_period = 0.0;
    int point_count = 0;
    double radius = 1.0;
    double kappa = 1.0;
    double gravity = 0.0;

    std::vector<ModeSpec> eta_modes;
    std::vector<ModeSpec> psi_modes;
    std::string snapshot_path; // when set, overrides the mode lists

    double dt = 0.0; // 0: auto-CFL
    double cfl = 0.5;
    double horizon = 0.0;
    int save_every = 1;
    double mollifier_eps = 0.0;
    double mollifier_rhs_eps = 0.0;
    MollifierMode mollifier_mode = MollifierMode::flat;
    bool dealias = true;
    double pinch_floor = 1e-6; // fraction of R at which the run halts

    int solver_cells = 0; // 0: 2N
    double solver_tol = 1e-10;

    double sobolev_index = 3.0;
    std::vector<int> tracked_modes;

    std::string out_dir = "out";
    std::vector<std::string> formats; // subset of {csv, svg, cjsnap}
};

SimConfig parse_sim_config(const nlohmann::json& j);
SimConfig load_sim_config(const std::string& path);
nlohmann::json sim_config_json(const SimConfig& c);

/// Canonical-config FNV hash, recorded in every CSV.
std::string config_hash(const SimConfig& c);

/// Builds the initial state and run spec; seed feeds random-phase modes only.
RunSpec build_run_spec(const SimConfig& c, uint64_t seed);

struct SweepCase {
    std::string name; // axis values joined, used for the run directory
    SimConfig config;
};

struct SweepSpec {
    SimConfig base;
    nlohmann::json base_json;
    std::vector<std::pair<std::string, nlohmann::json>> axes; // json-pointer path -> values
    int cap = 64;
    std::vector<SweepCase> expand() const;
};

SweepSpec parse_sweep_spec(const nlohmann::json& j);
SweepSpec load_sweep_spec(const std::string& path);

} // namespace cjet

#endif
