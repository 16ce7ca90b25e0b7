#include "dicke/spin_algebra.hpp"

#include <cmath>

namespace dicke {

OperatorMatrix ladder_raise(const SpinBasis& basis)
{
    const int N = basis.n_atoms;
    OperatorMatrix sp = OperatorMatrix::Zero(basis.dim, basis.dim);
    // Column j holds m_j = S - j; the raised state m_j + 1 sits in row j - 1.
    for (int j = 1; j < basis.dim; ++j) {
        const double n = basis.total_spin + basis.m_values[j]; // spin-up count
        sp(j - 1, j) = std::sqrt((N - n) * (n + 1.0));
    }
    return sp;
}

SpinOperators spin_operators(const SpinBasis& basis)
{
    const OperatorMatrix sp = ladder_raise(basis);
    const OperatorMatrix sm = sp.adjoint();
    SpinOperators out;
    out.sx = 0.5 * (sp + sm);
    out.sy = (sp - sm) / Complex(0.0, 2.0);
    out.sz = OperatorMatrix::Zero(basis.dim, basis.dim);
    for (int i = 0; i < basis.dim; ++i)
        out.sz(i, i) = basis.m_values[i];
    return out;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw std::invalid_argument("commutator: dimension mismatch");
    return a * b - b * a;
}

Complex trace_identity(const SpinBasis& basis, TraceIdentity which)
{
    const double j = basis.total_spin;
    const double eta = j * (j + 1.0);
    const double mu = eta * (2.0 * j + 1.0);
    switch (which) {
    case TraceIdentity::SL2:
        return {mu / 3.0, 0.0};
    case TraceIdentity::SL2SM2:
        return {mu * (2.0 * eta + 1.0) / 30.0, 0.0};
    case TraceIdentity::SLSMSN:
        return {0.0, mu / 6.0};
    }
    throw std::invalid_argument("trace_identity: invalid selector");
}

} // namespace dicke
