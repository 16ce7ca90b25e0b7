#include "dicke/drive.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace dicke {

DriveParams::DriveParams(double chi_, double alpha_, double omega_max_)
    : chi(chi_), alpha(alpha_), omega_max(omega_max_)
{
    if (chi <= 0.0)
        throw std::invalid_argument("DriveParams: chi must be positive");
    if (alpha <= 0.0)
        throw std::invalid_argument("DriveParams: alpha must be positive");
    if (omega_max < 0.0)
        throw std::invalid_argument("DriveParams: omega_max must be non-negative");
    scan_factor = alpha / (0.1 * chi * chi);
    t_start = -12.0 * chi / alpha;
    t_end = 2.0 * chi / alpha;
    tau = 2.0 * chi / alpha;
}

DriveParams DriveParams::defaults(double chi)
{
    return DriveParams(chi, 0.1 * chi * chi, 0.88 * chi);
}

DriveStage stage_of(const DriveParams& p, double t)
{
    const double s = p.scaled(t);
    if (s < -10.0)
        return DriveStage::TurnOn;
    if (s < 0.0)
        return DriveStage::Plateau;
    if (s <= 2.0)
        return DriveStage::TurnOff;
    return DriveStage::Off;
}

double beta(const DriveParams& p, double t)
{
    return t < 0.0 ? p.alpha * t : 0.0;
}

double omega(const DriveParams& p, double t)
{
    const double s = p.scaled(t);
    if (s < -12.0 || s > 2.0)
        return 0.0;
    switch (stage_of(p, t)) {
    case DriveStage::Plateau:
        return p.omega_max;
    case DriveStage::Off:
        return 0.0;
    default:
        return 0.5 * p.omega_max *
               (1.0 + std::cos(0.5 * M_PI * (std::abs(s + 5.0) - 5.0)));
    }
}

double omega_rate(const DriveParams& p, double t)
{
    return omega_rate(p, t, stage_of(p, t));
}

double omega_rate(const DriveParams& p, double t, DriveStage stage)
{
    const double s = p.scaled(t);
    if (s < -12.0)
        return 0.0;
    const double ds_dt = p.alpha / p.chi;
    switch (stage) {
    case DriveStage::TurnOn:
        return 0.25 * M_PI * p.omega_max * std::sin(0.5 * M_PI * (-s - 10.0)) * ds_dt;
    case DriveStage::TurnOff:
        return -0.25 * M_PI * p.omega_max * std::sin(0.5 * M_PI * s) * ds_dt;
    default:
        return 0.0;
    }
}

OperatorMatrix hamiltonian(const DriveParams& p, const SpinBasis& basis, double t)
{
    const SpinOperators s = spin_operators(basis);
    return p.chi * (s.sz * s.sz) + beta(p, t) * s.sz + omega(p, t) * s.sx;
}

std::vector<double> diabatic_energies(const DriveParams& p, const SpinBasis& basis,
                                      double t)
{
    const double b = beta(p, t);
    std::vector<double> out;
    out.reserve(basis.dim);
    for (double m : basis.m_values)
        out.push_back(p.chi * m * m + b * m);
    return out;
}

std::vector<double> instantaneous_spectrum(const DriveParams& p,
                                           const SpinBasis& basis, double t)
{
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(hamiltonian(p, basis, t));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("instantaneous_spectrum: eigensolver failed");
    const Eigen::VectorXd ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

} // namespace dicke
