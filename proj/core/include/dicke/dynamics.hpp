#pragma once

#include <vector>

#include "dicke/drive.hpp"
#include "dicke/gauge.hpp"

namespace dicke {

using StateVector = Eigen::VectorXcd;

struct IntegratorConfig {
    double step = 0.0;           // 0 -> default 1e-3 / chi
    int renormalize_every = 100; // steps between renormalizations
    int state_every = 100;       // full-state storage decimation

    double step_for(const DriveParams& p) const
    {
        return step > 0.0 ? step : 1e-3 / p.chi;
    }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> populations; // per time, per basis state
    std::vector<double> target_fidelity;
    std::vector<double> gs_fidelity;
    std::vector<double> state_times;
    std::vector<StateVector> states; // decimated
    double max_norm_drift = 0.0;     // max ||psi| - 1| seen before renormalizing
};

// Stretched state |S, S>, the protocol's initial state.
StateVector initial_css(const SpinBasis& basis);

// Even N: |S, 0>. Odd N: (|S,+1/2> + |S,-1/2>)/sqrt(2).
StateVector target_state(const SpinBasis& basis);

Eigen::VectorXd populations(const StateVector& psi);

double fidelity_to(const StateVector& psi, const StateVector& target);

// Overlap-squared with the instantaneous ground space of the bare H(t)
// (eigenvalues within deg_tol of the minimum are treated as one subspace).
double ground_state_fidelity(const OperatorMatrix& bare_h, const StateVector& psi,
                             double deg_tol);

// Fixed-step RK4 propagation of i dpsi/dt = H_CD(t) psi over
// [t_start, t_end], grid aligned to the stage boundaries.
Trajectory evolve(const DriveParams& p, const SpinBasis& basis,
                  const CorrectionScheme& scheme, const StateVector& psi0,
                  const IntegratorConfig& cfg);

} // namespace dicke
