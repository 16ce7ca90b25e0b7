#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace dicke {

using OperatorMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Descriptor of the (N+1)-dimensional symmetric (Dicke) subspace of N
/// two-level atoms. Basis states are ordered by descending magnetic quantum
/// number: row 0 corresponds to m = +S, the last row to m = -S.
struct SpinBasis {
    int n_atoms;
    double total_spin;            // S = N/2
    int dim;                      // N + 1
    std::vector<double> m_values; // S, S-1, ..., -S

    explicit SpinBasis(int n)
        : n_atoms(n), total_spin(0.5 * n), dim(n + 1)
    {
        if (n < 1)
            throw std::invalid_argument("SpinBasis: n_atoms must be >= 1");
        m_values.reserve(dim);
        for (int i = 0; i < dim; ++i)
            m_values.push_back(total_spin - i);
    }
};

// Collective raising operator sigma_D^+ on the Dicke subspace.
// Matrix elements sqrt((N-n)(n+1)) couple |S,m> -> |S,m+1> with n = S + m.
OperatorMatrix ladder_raise(const SpinBasis& basis);

/// Collective spin operators (Sx, Sy, Sz) with Sx = (s+ + s-)/2,
/// Sy = (s+ - s-)/(2i) and Sz diagonal with the basis m-values.
struct SpinOperators {
    OperatorMatrix sx, sy, sz;
};
SpinOperators spin_operators(const SpinBasis& basis);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

enum class TraceIdentity {
    SL2,    // Tr(S_L^2)
    SL2SM2, // Tr(S_L^2 S_M^2), L != M
    SLSMSN, // Tr(S_L S_M S_N), epsilon_LMN = +1
};

// Closed-form traces on the spin-j subspace, j = N/2:
//   Tr(S_L^2) = mu/3, Tr(S_L^2 S_M^2) = mu(2 eta + 1)/30,
//   Tr(S_L S_M S_N) = i mu/6, with eta = j(j+1), mu = eta(2j+1).
Complex trace_identity(const SpinBasis& basis, TraceIdentity which);

} // namespace dicke
