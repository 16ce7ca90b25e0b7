#include "dicke/dynamics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace dicke {

StateVector initial_css(const SpinBasis& basis)
{
    StateVector psi = StateVector::Zero(basis.dim);
    psi(0) = 1.0;
    return psi;
}

StateVector target_state(const SpinBasis& basis)
{
    StateVector psi = StateVector::Zero(basis.dim);
    if (basis.n_atoms % 2 == 0) {
        psi(basis.n_atoms / 2) = 1.0; // m = 0
    } else {
        // m = +1/2 and m = -1/2 straddle the middle of the ladder
        const int upper = (basis.n_atoms - 1) / 2;
        psi(upper) = psi(upper + 1) = 1.0 / std::sqrt(2.0);
    }
    return psi;
}

Eigen::VectorXd populations(const StateVector& psi)
{
    return psi.cwiseAbs2();
}

double fidelity_to(const StateVector& psi, const StateVector& target)
{
    if (psi.size() != target.size())
        throw std::invalid_argument("fidelity_to: dimension mismatch");
    return std::norm(target.dot(psi));
}

double ground_state_fidelity(const OperatorMatrix& bare_h, const StateVector& psi,
                             double deg_tol)
{
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(bare_h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("ground_state_fidelity: eigensolver failed");
    const Eigen::VectorXd eps = solver.eigenvalues();
    double f = 0.0;
    for (int i = 0; i < eps.size(); ++i)
        if (eps(i) - eps(0) < deg_tol)
            f += std::norm(solver.eigenvectors().col(i).dot(psi));
    return f;
}

Trajectory evolve(const DriveParams& p, const SpinBasis& basis,
                  const CorrectionScheme& scheme, const StateVector& psi0,
                  const IntegratorConfig& cfg)
{
    if (std::abs(psi0.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("evolve: psi0 not normalized");

    const double dt = cfg.step_for(p);
    // Segments between stage boundaries; no step straddles a boundary.
    const double bounds[4] = {p.t_start, -10.0 * p.chi / p.alpha, 0.0, p.t_end};

    const StateVector target = target_state(basis);
    const double deg_tol = 1e-8 * p.chi;
    const Complex mi(0.0, -1.0);

    Trajectory traj;
    StateVector psi = psi0;

    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.populations.push_back(populations(psi));
        traj.target_fidelity.push_back(fidelity_to(psi, target));
        traj.gs_fidelity.push_back(
            ground_state_fidelity(hamiltonian(p, basis, t), psi, deg_tol));
    };
    auto record_state = [&](double t) {
        traj.state_times.push_back(t);
        traj.states.push_back(psi);
    };

    record(bounds[0]);
    record_state(bounds[0]);

    const DriveStage seg_stage[3] = {DriveStage::TurnOn, DriveStage::Plateau,
                                     DriveStage::TurnOff};
    long global_step = 0;
    for (int seg = 0; seg < 3; ++seg) {
        const double len = bounds[seg + 1] - bounds[seg];
        const long steps = std::max<long>(1, std::llround(len / dt));
        const double h = len / static_cast<double>(steps);
        // One-sided stage per segment: the CD term is discontinuous at the
        // boundaries, and sampling the next stage's value at a segment's right
        // endpoint would cost the integrator its order.
        const DriveStage st = seg_stage[seg];
        OperatorMatrix h_t = cd_hamiltonian(p, basis, bounds[seg], scheme, st);
        for (long i = 0; i < steps; ++i) {
            const double t = bounds[seg] + h * static_cast<double>(i);
            const double t_next =
                (i + 1 == steps) ? bounds[seg + 1] : t + h;
            const OperatorMatrix h_mid =
                cd_hamiltonian(p, basis, t + 0.5 * h, scheme, st);
            const OperatorMatrix h_end =
                cd_hamiltonian(p, basis, t_next, scheme, st);

            const StateVector k1 = mi * (h_t * psi);
            const StateVector k2 = mi * (h_mid * (psi + 0.5 * h * k1));
            const StateVector k3 = mi * (h_mid * (psi + 0.5 * h * k2));
            const StateVector k4 = mi * (h_end * (psi + h * k3));
            psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            h_t = h_end;

            ++global_step;
            if (global_step % cfg.renormalize_every == 0) {
                const double drift = std::abs(psi.norm() - 1.0);
                traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
                if (drift > 1e-6)
                    throw std::runtime_error("evolve: norm drift exceeds 1e-6, "
                                             "step too large");
                psi.normalize();
            }
            record(t_next);
            if (global_step % cfg.state_every == 0)
                record_state(t_next);
        }
    }
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(psi.norm() - 1.0));
    return traj;
}

} // namespace dicke
