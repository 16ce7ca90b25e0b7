#include "dicke/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace dicke {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& scope,
                std::initializer_list<const char*> allowed)
{
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a)
                ok = true;
        if (!ok)
            throw ConfigError(scope.empty() ? key : scope + "." + key,
                              "unknown key");
    }
}

double require_positive(const json& j, const std::string& key, double fallback)
{
    if (!j.contains(key))
        return fallback;
    const double v = j.at(key).get<double>();
    if (v <= 0.0)
        throw ConfigError(key, "must be positive");
    return v;
}

std::string label_m(double m)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", m);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary); // LF line endings on all platforms
    if (!out)
        throw std::runtime_error("cannot open output file: " + path.string());
    return out;
}

void write_meta(const std::filesystem::path& path, const RunConfig& cfg,
                double wall_seconds)
{
    json meta;
    meta["config"] = config_to_json(cfg);
    meta["code_version"] = "0.1.0";
    meta["wall_time_s"] = wall_seconds;
    auto out = open_out(path);
    out << meta.dump(2) << "\n";
}

struct SweepRow {
    double alpha;
    std::string scheme_id;
    std::string status;
    double final_fidelity = 0.0;
    Eigen::VectorXd final_populations;
};

} // namespace

DriveParams RunConfig::drive(double alpha) const
{
    return DriveParams(chi, alpha, omega_max_factor * chi);
}

double RunConfig::scalar_alpha() const
{
    if (alpha_is_sweep)
        throw ConfigError("alpha", "scalar value required, got a sweep grid");
    return alpha_factor * chi * chi;
}

std::vector<double> RunConfig::alpha_grid() const
{
    std::vector<double> grid;
    if (!alpha_is_sweep) {
        grid.push_back(scalar_alpha());
        return grid;
    }
    const double scale = chi * chi;
    for (int i = 0; i < sweep.count; ++i) {
        const double f = sweep.count == 1
                             ? 0.0
                             : static_cast<double>(i) / (sweep.count - 1);
        double a;
        if (sweep.spacing == "log")
            a = sweep.min * std::pow(sweep.max / sweep.min, f);
        else
            a = sweep.min + f * (sweep.max - sweep.min);
        grid.push_back(a * scale);
    }
    return grid;
}

IntegratorConfig RunConfig::integrator() const
{
    IntegratorConfig cfg;
    cfg.step = integrator_step;
    cfg.renormalize_every = renormalize_every;
    cfg.state_every = outputs.state_every;
    return cfg;
}

RunConfig parse_config(const json& j)
{
    check_keys(j, "",
               {"n_atoms", "chi", "alpha", "omega_max_factor", "scheme", "schemes",
                "integrator", "outputs", "spectrum"});
    RunConfig cfg;
    if (!j.contains("n_atoms"))
        throw ConfigError("n_atoms", "required");
    cfg.n_atoms = j.at("n_atoms").get<int>();
    if (cfg.n_atoms < 1)
        throw ConfigError("n_atoms", "must be >= 1");
    cfg.chi = require_positive(j, "chi", cfg.chi);
    if (j.contains("alpha")) {
        const json& a = j.at("alpha");
        if (a.is_object()) {
            check_keys(a, "alpha", {"min", "max", "count", "spacing"});
            cfg.alpha_is_sweep = true;
            cfg.sweep.min = a.value("min", cfg.sweep.min);
            cfg.sweep.max = a.value("max", cfg.sweep.max);
            cfg.sweep.count = a.value("count", cfg.sweep.count);
            cfg.sweep.spacing = a.value("spacing", cfg.sweep.spacing);
            if (cfg.sweep.min <= 0.0)
                throw ConfigError("alpha.min", "must be positive");
            if (cfg.sweep.count < 1)
                throw ConfigError("alpha.count", "must be >= 1");
            if (cfg.sweep.max < cfg.sweep.min)
                throw ConfigError("alpha.max", "grid must be non-decreasing");
            if (cfg.sweep.spacing != "linear" && cfg.sweep.spacing != "log")
                throw ConfigError("alpha.spacing", "must be 'linear' or 'log'");
        } else {
            cfg.alpha_factor = a.get<double>();
            if (cfg.alpha_factor <= 0.0)
                throw ConfigError("alpha", "must be positive");
        }
    }
    if (j.contains("omega_max_factor")) {
        cfg.omega_max_factor = j.at("omega_max_factor").get<double>();
        if (cfg.omega_max_factor < 0.0)
            throw ConfigError("omega_max_factor", "must be non-negative");
    }
    cfg.scheme = j.value("scheme", cfg.scheme);
    CorrectionScheme::parse(cfg.scheme); // validate early
    if (j.contains("schemes")) {
        for (const auto& s : j.at("schemes")) {
            cfg.schemes.push_back(s.get<std::string>());
            CorrectionScheme::parse(cfg.schemes.back());
        }
    }
    if (j.contains("integrator")) {
        const json& it = j.at("integrator");
        check_keys(it, "integrator", {"step", "renormalize_every"});
        if (it.contains("step")) {
            cfg.integrator_step = it.at("step").get<double>();
            if (cfg.integrator_step <= 0.0)
                throw ConfigError("integrator.step", "must be positive");
        }
        if (it.contains("renormalize_every")) {
            cfg.renormalize_every = it.at("renormalize_every").get<int>();
            if (cfg.renormalize_every < 1)
                throw ConfigError("integrator.renormalize_every", "must be >= 1");
        }
    }
    if (j.contains("outputs")) {
        const json& o = j.at("outputs");
        check_keys(o, "outputs", {"output_every", "state_every"});
        cfg.outputs.output_every = o.value("output_every", cfg.outputs.output_every);
        cfg.outputs.state_every = o.value("state_every", cfg.outputs.state_every);
        if (cfg.outputs.output_every < 1)
            throw ConfigError("outputs.output_every", "must be >= 1");
        if (cfg.outputs.state_every < 1)
            throw ConfigError("outputs.state_every", "must be >= 1");
    }
    if (j.contains("spectrum")) {
        const json& s = j.at("spectrum");
        check_keys(s, "spectrum", {"points", "levels"});
        cfg.spectrum_points = s.value("points", cfg.spectrum_points);
        cfg.spectrum_levels = s.value("levels", cfg.spectrum_levels);
        if (cfg.spectrum_points < 2)
            throw ConfigError("spectrum.points", "must be >= 2");
        if (cfg.spectrum_levels < 0)
            throw ConfigError("spectrum.levels", "must be >= 0");
    }
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config parse error: " + std::string(e.what()));
    }
    return parse_config(j);
}

json config_to_json(const RunConfig& cfg)
{
    json j;
    j["n_atoms"] = cfg.n_atoms;
    j["chi"] = cfg.chi;
    if (cfg.alpha_is_sweep)
        j["alpha"] = {{"min", cfg.sweep.min},
                      {"max", cfg.sweep.max},
                      {"count", cfg.sweep.count},
                      {"spacing", cfg.sweep.spacing}};
    else
        j["alpha"] = cfg.alpha_factor;
    j["omega_max_factor"] = cfg.omega_max_factor;
    j["scheme"] = cfg.scheme;
    if (!cfg.schemes.empty())
        j["schemes"] = cfg.schemes;
    json it;
    if (cfg.integrator_step > 0.0)
        it["step"] = cfg.integrator_step;
    it["renormalize_every"] = cfg.renormalize_every;
    j["integrator"] = it;
    j["outputs"] = {{"output_every", cfg.outputs.output_every},
                    {"state_every", cfg.outputs.state_every}};
    j["spectrum"] = {{"points", cfg.spectrum_points},
                     {"levels", cfg.spectrum_levels}};
    return j;
}

std::string format_number(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string cmd_dynamics(const RunConfig& cfg, const std::string& out_dir)
{
    const auto t0 = std::chrono::steady_clock::now();
    const SpinBasis basis(cfg.n_atoms);
    const DriveParams params = cfg.drive(cfg.scalar_alpha());
    const CorrectionScheme scheme = CorrectionScheme::parse(cfg.scheme);
    const Trajectory traj =
        evolve(params, basis, scheme, initial_css(basis), cfg.integrator());

    std::filesystem::create_directories(out_dir);
    const auto csv_path = std::filesystem::path(out_dir) / "dynamics.csv";
    auto out = open_out(csv_path);
    out << "t,t_scaled,beta,omega";
    for (double m : basis.m_values)
        out << ",P_m=" << label_m(m);
    out << ",fidelity_target,gs_fidelity\n";
    const size_t n = traj.times.size();
    for (size_t i = 0; i < n; ++i) {
        if (i % cfg.outputs.output_every != 0 && i + 1 != n)
            continue;
        const double t = traj.times[i];
        out << format_number(t) << ',' << format_number(params.scaled(t)) << ','
            << format_number(beta(params, t)) << ','
            << format_number(omega(params, t));
        for (int k = 0; k < basis.dim; ++k)
            out << ',' << format_number(traj.populations[i](k));
        out << ',' << format_number(traj.target_fidelity[i]) << ','
            << format_number(traj.gs_fidelity[i]) << '\n';
    }
    out.close();
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_meta(std::filesystem::path(out_dir) / "dynamics_meta.json", cfg, wall);
    return csv_path.string();
}

std::string cmd_sweep(const RunConfig& cfg, const std::vector<std::string>& schemes,
                      const std::string& out_dir, int workers)
{
    if (schemes.empty())
        throw std::invalid_argument("cmd_sweep: scheme list is empty");
    const auto t0 = std::chrono::steady_clock::now();
    const SpinBasis basis(cfg.n_atoms);
    const std::vector<double> alphas = cfg.alpha_grid();

    std::vector<SweepRow> rows(alphas.size() * schemes.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= rows.size())
                return;
            const double alpha = alphas[idx / schemes.size()];
            const std::string& scheme_id = schemes[idx % schemes.size()];
            SweepRow& row = rows[idx];
            row.alpha = alpha;
            row.scheme_id = scheme_id;
            try {
                const DriveParams params = cfg.drive(alpha);
                const CorrectionScheme scheme = CorrectionScheme::parse(scheme_id);
                const Trajectory traj = evolve(params, basis, scheme,
                                               initial_css(basis), cfg.integrator());
                row.final_fidelity = traj.target_fidelity.back();
                row.final_populations = traj.populations.back();
                row.status = "ok";
            } catch (const std::exception& e) {
                row.status = std::string("error: ") + e.what();
                row.final_populations = Eigen::VectorXd::Zero(basis.dim);
            }
        }
    };
    if (workers < 1)
        workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(rows.size())));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();

    std::filesystem::create_directories(out_dir);
    const auto csv_path = std::filesystem::path(out_dir) / "sweep.csv";
    auto out = open_out(csv_path);
    out << "alpha,n,scheme_id,final_fidelity";
    for (double m : basis.m_values)
        out << ",P_m=" << label_m(m);
    out << ",status\n";
    for (const SweepRow& row : rows) {
        const double n_scan = row.alpha / (0.1 * cfg.chi * cfg.chi);
        out << format_number(row.alpha) << ',' << format_number(n_scan) << ','
            << row.scheme_id << ',' << format_number(row.final_fidelity);
        for (int k = 0; k < basis.dim; ++k)
            out << ',' << format_number(row.final_populations(k));
        out << ',' << row.status << '\n';
    }
    out.close();
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_meta(std::filesystem::path(out_dir) / "sweep_meta.json", cfg, wall);
    return csv_path.string();
}

std::string cmd_spectrum(const RunConfig& cfg, const std::string& out_dir)
{
    const auto t0 = std::chrono::steady_clock::now();
    const SpinBasis basis(cfg.n_atoms);
    const DriveParams params = cfg.drive(cfg.scalar_alpha());
    const int levels = cfg.spectrum_levels > 0 ? std::min(cfg.spectrum_levels, basis.dim)
                                               : std::min(5, basis.dim);

    std::filesystem::create_directories(out_dir);
    const auto csv_path = std::filesystem::path(out_dir) / "spectrum.csv";
    auto out = open_out(csv_path);
    out << "t,t_scaled";
    for (int k = 0; k < levels; ++k)
        out << ",E_adiabatic_" << k;
    for (double m : basis.m_values)
        out << ",E_diabatic_m=" << label_m(m);
    out << '\n';
    for (int i = 0; i < cfg.spectrum_points; ++i) {
        const double f = static_cast<double>(i) / (cfg.spectrum_points - 1);
        const double t = params.t_start + f * (params.t_end - params.t_start);
        out << format_number(t) << ',' << format_number(params.scaled(t));
        const std::vector<double> adiabatic = instantaneous_spectrum(params, basis, t);
        for (int k = 0; k < levels; ++k)
            out << ',' << format_number(adiabatic[k]);
        for (double e : diabatic_energies(params, basis, t))
            out << ',' << format_number(e);
        out << '\n';
    }
    out.close();
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_meta(std::filesystem::path(out_dir) / "spectrum_meta.json", cfg, wall);
    return csv_path.string();
}

} // namespace dicke
