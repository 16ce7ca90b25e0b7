#pragma once

#include <vector>

#include "dicke/spin_algebra.hpp"

namespace dicke {

enum class DriveStage { TurnOn, Plateau, TurnOff, Off };

/// Pulse-schedule parameters. The protocol runs from t_start = -12 chi/alpha
/// to t_end = 2 chi/alpha; the scaled time s = alpha t / chi covers [-12, 2]
/// with stage boundaries at s = -12, -10, 0, 2.
struct DriveParams {
    double chi;         // shearing strength
    double alpha;       // chirp rate
    double omega_max;   // drive amplitude on the plateau
    double scan_factor; // n = alpha / (0.1 chi^2)
    double t_start;     // -12 chi/alpha
    double t_end;       // +2 chi/alpha
    double tau;         // crossing period 2 chi/alpha

    DriveParams(double chi_, double alpha_, double omega_max_);

    // Fig. 1 defaults: chi = 10, alpha = 0.1 chi^2, omega_max = 0.88 chi.
    static DriveParams defaults(double chi = 10.0);

    double scaled(double t) const { return alpha * t / chi; }
};

DriveStage stage_of(const DriveParams& p, double t);

// Linear chirp beta(t) = alpha t for t < 0, zero afterwards.
double beta(const DriveParams& p, double t);

// Drive amplitude: cosine ramps on TurnOn/TurnOff, omega_max on the
// plateau, zero outside the protocol window.
double omega(const DriveParams& p, double t);

// Analytic dOmega/dt; one-sided at stage boundaries (value of the stage the
// point belongs to under the half-open convention).
double omega_rate(const DriveParams& p, double t);

// Same, but with the stage fixed by the caller. Used by the integrator to
// take the left-sided limit at a segment's right endpoint, where the
// half-open convention would switch to the next stage's (discontinuous) rate.
double omega_rate(const DriveParams& p, double t, DriveStage stage);

OperatorMatrix hamiltonian(const DriveParams& p, const SpinBasis& basis, double t);

// Bare-crossing energies E_m = chi m^2 + beta(t) m, in basis order.
std::vector<double> diabatic_energies(const DriveParams& p, const SpinBasis& basis,
                                      double t);

// Ascending eigenvalues of hamiltonian(t).
std::vector<double> instantaneous_spectrum(const DriveParams& p,
                                           const SpinBasis& basis, double t);

} // namespace dicke
