#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dicke/dynamics.hpp"

namespace dicke {

struct ConfigError : std::runtime_error {
    std::string key;
    ConfigError(const std::string& key_, const std::string& what_)
        : std::runtime_error("config key '" + key_ + "': " + what_), key(key_)
    {
    }
};

/// Chirp-rate grid in units of chi^2.
struct SweepSpec {
    double min = 0.1;
    double max = 1.0;
    int count = 10;
    std::string spacing = "linear"; // "linear" or "log"

    bool operator==(const SweepSpec&) const = default;
};

struct OutputConfig {
    int output_every = 10;  // CSV row decimation (integrator steps)
    int state_every = 100;  // full-state storage decimation

    bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
    int n_atoms = 0;
    double chi = 10.0;
    bool alpha_is_sweep = false;
    double alpha_factor = 0.1; // scalar alpha in units of chi^2
    SweepSpec sweep;
    double omega_max_factor = 0.88;
    std::string scheme = "none";
    std::vector<std::string> schemes; // sweep scheme list; falls back to {scheme}
    double integrator_step = 0.0;     // 0 -> default 1e-3/chi
    int renormalize_every = 100;
    OutputConfig outputs;
    int spectrum_points = 1401;
    int spectrum_levels = 0; // 0 -> min(5, dim)

    bool operator==(const RunConfig&) const = default;

    DriveParams drive(double alpha) const;
    double scalar_alpha() const; // throws if alpha is a sweep grid
    std::vector<double> alpha_grid() const;
    IntegratorConfig integrator() const;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json config_to_json(const RunConfig& cfg);

// Fixed 12-significant-digit float formatting used by all CSV output.
std::string format_number(double x);

// Time-series CSV (t, t_scaled, beta, omega, per-m populations, fidelities)
// plus a JSON metadata sidecar. Returns the CSV path.
std::string cmd_dynamics(const RunConfig& cfg, const std::string& out_dir);

// Final-state-vs-alpha CSV over the config's alpha grid, one row per
// (alpha, scheme). Individual run failures become rows with a status field.
std::string cmd_sweep(const RunConfig& cfg, const std::vector<std::string>& schemes,
                      const std::string& out_dir, int workers);

// Adiabatic and diabatic energy tracks over the protocol window.
std::string cmd_spectrum(const RunConfig& cfg, const std::string& out_dir);

} // namespace dicke
