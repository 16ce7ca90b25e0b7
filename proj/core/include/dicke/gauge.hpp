#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dicke/drive.hpp"
#include "dicke/spin_algebra.hpp"

namespace dicke {

struct DegenerateSpectrum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-stage control decomposition H_a = chi Sz^2 + beta Sz + Omega Sx with
/// one term singled out as the driven parameter lambda:
///   TurnOn/TurnOff: lambda = Omega(t),  dH/dlambda = Sx
///   Plateau:        lambda = beta(t),   dH/dlambda = Sz
struct StageControl {
    DriveStage stage;
    double lambda;
    double lambda_rate;
    OperatorMatrix h_a;
    OperatorMatrix dh;
    // Parameters as seen by the stage (kept for the closed forms).
    double chi;
    double beta_val;
    double omega_val;
};

StageControl stage_control(const DriveParams& p, const SpinBasis& basis, double t);

// Stage fixed by the caller; beta/Omega are continuous across boundaries, so
// this only pins down the (lambda, lambda_rate, dH) decomposition.
StageControl stage_control(const DriveParams& p, const SpinBasis& basis, double t,
                           DriveStage stage);

/// Nested commutators O_0 = dH/dlambda, O_k = [H_a, O_{k-1}] up to k = 2*order.
/// Even-index operators are Hermitian, odd-index anti-Hermitian.
struct NestedCommutators {
    int order;
    std::vector<OperatorMatrix> ops; // size 2*order + 1
};

NestedCommutators nested_commutators(const StageControl& ctrl, int order);

/// Quadratic form S(xi) = A + 2 B.xi + xi^T C xi of the variational action,
/// with A = Tr[O_0^2], B_i = Tr[O_0 O_2i], C_ij = Tr[O_2i O_2j].
struct QuadraticAction {
    double scalar_a;
    Eigen::VectorXd vec_b;
    Eigen::MatrixXd mat_c;

    double value(const Eigen::VectorXd& xi) const
    {
        return scalar_a + 2.0 * vec_b.dot(xi) + xi.dot(mat_c * xi);
    }
};

QuadraticAction quadratic_action(const NestedCommutators& nc);

struct Coefficients {
    int order;
    Eigen::VectorXd xi;
};

// Minimizer of the quadratic action; degenerate directions of C are dropped
// (pseudo-inverse with cutoff 1e-12 * max eigenvalue).
Coefficients solve_coefficients(const QuadraticAction& qa);

// Variational gauge potential A^(l) = i sum_k xi_k O_{2k-1}.
OperatorMatrix agp_variational(const StageControl& ctrl, int order);

// Exact gauge potential from the eigenbasis of h:
// <m|A|n> = -i <m|dh|n> / (e_m - e_n) off the diagonal, zero on it.
// Throws DegenerateSpectrum when a near-degenerate pair carries a coupling
// above gap_tol.
OperatorMatrix agp_exact(const OperatorMatrix& h, const OperatorMatrix& dh,
                         double gap_tol);

// Closed-form coefficients for the two-atom (j = 1) system.
double xi1_plateau_closed_form(double chi, double lam, double om);
std::pair<double, double> xi_second_order_closed_form(double chi, double lam,
                                                      double om);
double xi1_turn_on_closed_form(double chi, double beta, double lam);

enum class CorrectionKind { None, Variational, ClosedForm1, ClosedForm2, Exact };

struct CorrectionEntry {
    CorrectionKind kind = CorrectionKind::None;
    int order = 0; // for Variational
};

/// Per-stage counterdiabatic prescription. Scheme strings follow the figure
/// labels: "none", "mid-cd<l>", "off-cd<l>", "on-cd<l>", "exact", and the
/// closed-form variants "mid-cf1", "mid-cf2", "on-cf1", "off-cf1", joined
/// with '+' (e.g. "off-cd1+mid-cd3").
struct CorrectionScheme {
    CorrectionEntry turn_on;
    CorrectionEntry plateau;
    CorrectionEntry turn_off;
    std::string id = "none";

    static CorrectionScheme none() { return {}; }
    static CorrectionScheme exact();
    static CorrectionScheme parse(const std::string& id);

    const CorrectionEntry* entry(DriveStage stage) const;
};

// H_CD(t) = H(t) + lambda_rate * A_lambda, with A_lambda built per the
// stage's scheme entry. Default exact-AGP degeneracy cutoff is 1e-8 * chi.
OperatorMatrix cd_hamiltonian(const DriveParams& p, const SpinBasis& basis,
                              double t, const CorrectionScheme& scheme);

// Stage-forced variant taking the one-sided limit at boundaries; keeps the
// right-hand side smooth within an integration segment.
OperatorMatrix cd_hamiltonian(const DriveParams& p, const SpinBasis& basis,
                              double t, const CorrectionScheme& scheme,
                              DriveStage stage);

} // namespace dicke
