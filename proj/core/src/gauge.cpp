#include "dicke/gauge.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace dicke {

namespace {

double frob(const OperatorMatrix& m) { return m.norm(); }

void check_hermitian_pattern(const OperatorMatrix& op, int k)
{
    const double scale = 1.0 + frob(op);
    const double dev = (k % 2 == 0) ? frob(op - op.adjoint())
                                    : frob(op + op.adjoint());
    if (dev > 1e-10 * scale)
        throw std::runtime_error("nested_commutators: hermiticity pattern broken at k=" +
                                 std::to_string(k));
}

// Trace of a product of two operators, asserting a real result.
double real_trace_product(const OperatorMatrix& a, const OperatorMatrix& b)
{
    const Complex tr = (a * b).trace();
    const double tol = 1e-10 * (1.0 + frob(a) * frob(b));
    if (std::abs(tr.imag()) > tol)
        throw std::runtime_error("quadratic_action: imaginary trace residue");
    return tr.real();
}

} // namespace

StageControl stage_control(const DriveParams& p, const SpinBasis& basis, double t)
{
    return stage_control(p, basis, t, stage_of(p, t));
}

StageControl stage_control(const DriveParams& p, const SpinBasis& basis, double t,
                           DriveStage stage)
{
    const SpinOperators s = spin_operators(basis);
    StageControl ctrl;
    ctrl.stage = stage;
    ctrl.chi = p.chi;
    ctrl.beta_val = beta(p, t);
    ctrl.omega_val = omega(p, t);
    ctrl.h_a = hamiltonian(p, basis, t);
    if (ctrl.stage == DriveStage::Plateau) {
        ctrl.lambda = ctrl.beta_val;
        ctrl.lambda_rate = p.alpha;
        ctrl.dh = s.sz;
    } else {
        ctrl.lambda = ctrl.omega_val;
        ctrl.lambda_rate = omega_rate(p, t, stage);
        ctrl.dh = s.sx;
    }
    return ctrl;
}

NestedCommutators nested_commutators(const StageControl& ctrl, int order)
{
    if (order < 1)
        throw std::invalid_argument("nested_commutators: order must be >= 1");
    NestedCommutators nc;
    nc.order = order;
    nc.ops.reserve(2 * order + 1);
    nc.ops.push_back(ctrl.dh);
    for (int k = 1; k <= 2 * order; ++k) {
        nc.ops.push_back(commutator(ctrl.h_a, nc.ops.back()));
        check_hermitian_pattern(nc.ops.back(), k);
    }
    return nc;
}

QuadraticAction quadratic_action(const NestedCommutators& nc)
{
    const int l = nc.order;
    QuadraticAction qa;
    qa.scalar_a = real_trace_product(nc.ops[0], nc.ops[0]);
    qa.vec_b.resize(l);
    qa.mat_c.resize(l, l);
    for (int i = 1; i <= l; ++i) {
        qa.vec_b(i - 1) = real_trace_product(nc.ops[0], nc.ops[2 * i]);
        for (int j = i; j <= l; ++j) {
            const double c = real_trace_product(nc.ops[2 * i], nc.ops[2 * j]);
            qa.mat_c(i - 1, j - 1) = c;
            qa.mat_c(j - 1, i - 1) = c;
        }
    }
    return qa;
}

Coefficients solve_coefficients(const QuadraticAction& qa)
{
    const int l = static_cast<int>(qa.vec_b.size());
    // Equilibrate to unit diagonal first: C_kk = ||O_2k||_F^2 spans many orders
    // of magnitude across Krylov orders, and the rank cutoff below is only
    // meaningful on the correlation matrix.
    Eigen::VectorXd scale(l);
    for (int k = 0; k < l; ++k)
        scale(k) = qa.mat_c(k, k) > 0.0 ? 1.0 / std::sqrt(qa.mat_c(k, k)) : 0.0;
    const Eigen::MatrixXd c_eq =
        scale.asDiagonal() * qa.mat_c * scale.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c_eq);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("solve_coefficients: eigensolver failed");
    const Eigen::VectorXd d = solver.eigenvalues();
    const Eigen::MatrixXd u = solver.eigenvectors();
    const double cutoff =
        l > 0 ? 1e-12 * std::max(d.cwiseAbs().maxCoeff(), 0.0) : 0.0;
    const Eigen::VectorXd bp = u.transpose() * (scale.asDiagonal() * qa.vec_b);
    Eigen::VectorXd xip = Eigen::VectorXd::Zero(l);
    for (int k = 0; k < l; ++k)
        if (d(k) > cutoff)
            xip(k) = -bp(k) / d(k);
    return Coefficients{l, scale.asDiagonal() * (u * xip)};
}

OperatorMatrix agp_variational(const StageControl& ctrl, int order)
{
    const NestedCommutators nc = nested_commutators(ctrl, order);
    const Coefficients coef = solve_coefficients(quadratic_action(nc));
    OperatorMatrix a = OperatorMatrix::Zero(ctrl.h_a.rows(), ctrl.h_a.cols());
    for (int k = 1; k <= order; ++k)
        a += Complex(0.0, 1.0) * coef.xi(k - 1) * nc.ops[2 * k - 1];
    return a;
}

OperatorMatrix agp_exact(const OperatorMatrix& h, const OperatorMatrix& dh,
                         double gap_tol)
{
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("agp_exact: eigensolver failed");
    const Eigen::VectorXd eps = solver.eigenvalues();
    const OperatorMatrix v = solver.eigenvectors();
    const OperatorMatrix m = v.adjoint() * dh * v;
    const int dim = static_cast<int>(h.rows());
    OperatorMatrix a = OperatorMatrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            if (i == j)
                continue; // Berry connection gauge: diagonal set to zero
            const double gap = eps(i) - eps(j);
            if (std::abs(gap) < gap_tol) {
                if (std::abs(m(i, j)) > gap_tol)
                    throw DegenerateSpectrum(
                        "agp_exact: coupled near-degenerate pair, gap " +
                        std::to_string(gap));
                continue;
            }
            a(i, j) = Complex(0.0, -1.0) * m(i, j) / gap;
        }
    }
    return v * a * v.adjoint();
}

double xi1_plateau_closed_form(double chi, double lam, double om)
{
    const double den = om * om + lam * lam + chi * chi;
    if (den == 0.0)
        throw std::invalid_argument("xi1_plateau_closed_form: all parameters zero");
    return -1.0 / den;
}

std::pair<double, double> xi_second_order_closed_form(double chi, double lam,
                                                      double om)
{
    const double l2 = lam * lam, o2 = om * om, c2 = chi * chi;
    const double den = 4.0 * l2 * l2 * l2 + o2 * o2 * o2 - 8.0 * c2 * l2 * l2 +
                       4.0 * c2 * c2 * l2 + 33.0 * l2 * o2 * o2 +
                       36.0 * l2 * l2 * o2 + 28.0 * c2 * l2 * o2;
    if (den == 0.0)
        throw std::invalid_argument("xi_second_order_closed_form: vanishing denominator");
    const double num1 = 8.0 * l2 * l2 + 2.0 * o2 * o2 + 8.0 * c2 * l2 +
                        c2 * o2 + 37.0 * l2 * o2;
    const double num2 = 4.0 * l2 + o2;
    return {-num1 / den, num2 / den};
}

double xi1_turn_on_closed_form(double chi, double beta, double lam)
{
    const double b2 = beta * beta, c2 = chi * chi, l2 = lam * lam;
    const double den = b2 * b2 + 6.0 * b2 * c2 + b2 * l2 + c2 * c2 + 4.0 * c2 * l2;
    if (den == 0.0)
        throw std::invalid_argument("xi1_turn_on_closed_form: vanishing denominator");
    return -(b2 + c2) / den;
}

CorrectionScheme CorrectionScheme::exact()
{
    CorrectionScheme s;
    s.turn_on = s.plateau = s.turn_off = {CorrectionKind::Exact, 0};
    s.id = "exact";
    return s;
}

CorrectionScheme CorrectionScheme::parse(const std::string& id)
{
    CorrectionScheme s;
    s.id = id;
    if (id.empty())
        throw std::invalid_argument("CorrectionScheme: empty scheme id");
    size_t pos = 0;
    while (pos <= id.size()) {
        size_t next = id.find('+', pos);
        const std::string tok =
            id.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = (next == std::string::npos) ? id.size() + 1 : next + 1;
        if (tok == "none")
            continue;
        if (tok == "exact") {
            s.turn_on = s.plateau = s.turn_off = {CorrectionKind::Exact, 0};
            continue;
        }
        CorrectionEntry* slot = nullptr;
        std::string rest;
        if (tok.rfind("mid-", 0) == 0) {
            slot = &s.plateau;
            rest = tok.substr(4);
        } else if (tok.rfind("off-", 0) == 0) {
            slot = &s.turn_off;
            rest = tok.substr(4);
        } else if (tok.rfind("on-", 0) == 0) {
            slot = &s.turn_on;
            rest = tok.substr(3);
        } else {
            throw std::invalid_argument("CorrectionScheme: unknown token '" + tok + "'");
        }
        if (rest.rfind("cd", 0) == 0 && rest.size() > 2) {
            const int order = std::stoi(rest.substr(2));
            if (order < 1)
                throw std::invalid_argument("CorrectionScheme: order must be >= 1");
            *slot = {CorrectionKind::Variational, order};
        } else if (rest == "cf1") {
            *slot = {CorrectionKind::ClosedForm1, 0};
        } else if (rest == "cf2") {
            if (slot != &s.plateau)
                throw std::invalid_argument(
                    "CorrectionScheme: cf2 is only available for the plateau");
            *slot = {CorrectionKind::ClosedForm2, 0};
        } else {
            throw std::invalid_argument("CorrectionScheme: unknown token '" + tok + "'");
        }
    }
    return s;
}

const CorrectionEntry* CorrectionScheme::entry(DriveStage stage) const
{
    switch (stage) {
    case DriveStage::TurnOn:
        return &turn_on;
    case DriveStage::Plateau:
        return &plateau;
    case DriveStage::TurnOff:
        return &turn_off;
    default:
        return nullptr;
    }
}

OperatorMatrix cd_hamiltonian(const DriveParams& p, const SpinBasis& basis,
                              double t, const CorrectionScheme& scheme)
{
    return cd_hamiltonian(p, basis, t, scheme, stage_of(p, t));
}

OperatorMatrix cd_hamiltonian(const DriveParams& p, const SpinBasis& basis,
                              double t, const CorrectionScheme& scheme,
                              DriveStage stage)
{
    const CorrectionEntry* entry = scheme.entry(stage);
    if (entry == nullptr || entry->kind == CorrectionKind::None)
        return hamiltonian(p, basis, t);

    const StageControl ctrl = stage_control(p, basis, t, stage);
    if (ctrl.lambda_rate == 0.0 && entry->kind != CorrectionKind::Exact &&
        ctrl.stage != DriveStage::Plateau)
        return ctrl.h_a;

    OperatorMatrix a;
    switch (entry->kind) {
    case CorrectionKind::Variational:
        a = agp_variational(ctrl, entry->order);
        break;
    case CorrectionKind::Exact:
        a = agp_exact(ctrl.h_a, ctrl.dh, 1e-8 * p.chi);
        break;
    case CorrectionKind::ClosedForm1:
    case CorrectionKind::ClosedForm2: {
        // Closed forms come from the j = 1 trace identities.
        if (basis.n_atoms != 2)
            throw std::invalid_argument(
                "cd_hamiltonian: closed-form entries are valid for N = 2 only");
        const SpinOperators s = spin_operators(basis);
        if (ctrl.stage == DriveStage::Plateau) {
            if (entry->kind == CorrectionKind::ClosedForm1) {
                const double xi1 =
                    xi1_plateau_closed_form(ctrl.chi, ctrl.lambda, ctrl.omega_val);
                a = xi1 * ctrl.omega_val * s.sy;
            } else {
                const auto [xi1, xi2] = xi_second_order_closed_form(
                    ctrl.chi, ctrl.lambda, ctrl.omega_val);
                const NestedCommutators nc = nested_commutators(ctrl, 2);
                a = Complex(0.0, 1.0) * (xi1 * nc.ops[1] + xi2 * nc.ops[3]);
            }
        } else {
            if (entry->kind == CorrectionKind::ClosedForm2)
                throw std::invalid_argument(
                    "cd_hamiltonian: ClosedForm2 is valid on the plateau only");
            const double xi1 =
                xi1_turn_on_closed_form(ctrl.chi, ctrl.beta_val, ctrl.lambda);
            a = -xi1 * (ctrl.chi * (s.sz * s.sy + s.sy * s.sz) +
                        ctrl.beta_val * s.sy);
        }
        break;
    }
    default:
        return ctrl.h_a;
    }
    return ctrl.h_a + ctrl.lambda_rate * a;
}

} // namespace dicke
