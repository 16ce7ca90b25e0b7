#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dicke/dynamics.hpp"

using namespace dicke;

TEST_CASE("initial and target states")
{
    CHECK(initial_css(SpinBasis(2)).isApprox(
        (Eigen::VectorXcd(3) << 1, 0, 0).finished()));
    CHECK(initial_css(SpinBasis(3)).isApprox(
        (Eigen::VectorXcd(4) << 1, 0, 0, 0).finished()));

    CHECK(target_state(SpinBasis(2)).isApprox(
        (Eigen::VectorXcd(3) << 0, 1, 0).finished()));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(target_state(SpinBasis(3)).isApprox(
        (Eigen::VectorXcd(4) << 0, r, r, 0).finished()));
    // even N: basis vector at m = 0
    Eigen::VectorXcd t4 = target_state(SpinBasis(4));
    CHECK(std::abs(t4(2)) == doctest::Approx(1.0));
}

TEST_CASE("populations and fidelity")
{
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(1) = 1.0;
    Eigen::VectorXd pop = populations(psi);
    CHECK(pop(1) == doctest::Approx(1.0));
    CHECK(pop.sum() == doctest::Approx(1.0).epsilon(1e-10));

    Eigen::VectorXcd half = Eigen::VectorXcd::Zero(4);
    half(0) = half(3) = 1.0 / std::sqrt(2.0);
    CHECK(populations(half)(0) == doctest::Approx(0.5));

    CHECK(fidelity_to(psi, psi) == doctest::Approx(1.0));
    Eigen::VectorXcd other = Eigen::VectorXcd::Zero(4);
    other(2) = 1.0;
    CHECK(fidelity_to(psi, other) == doctest::Approx(0.0));
    Eigen::VectorXcd mix = (psi + other) / std::sqrt(2.0);
    CHECK(fidelity_to(mix, psi) == doctest::Approx(0.5));

    CHECK_THROWS(fidelity_to(psi, Eigen::VectorXcd::Zero(3)));
}

TEST_CASE("CSS is the ground state at protocol start")
{
    for (int n = 2; n <= 6; ++n) {
        SpinBasis b(n);
        DriveParams p = DriveParams::defaults();
        const double f = ground_state_fidelity(hamiltonian(p, b, p.t_start),
                                               initial_css(b), 1e-8 * p.chi);
        CHECK(f > 0.999);
    }
}

TEST_CASE("ground-state fidelity after the protocol is the m=0 overlap")
{
    SpinBasis b(4);
    DriveParams p = DriveParams::defaults();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(b.dim);
    psi(2) = std::sqrt(0.7);
    psi(1) = std::sqrt(0.3);
    const double f = ground_state_fidelity(hamiltonian(p, b, p.t_end + 1.0), psi,
                                           1e-8 * p.chi);
    CHECK(f == doctest::Approx(fidelity_to(psi, target_state(b))).epsilon(1e-10));
}

TEST_CASE("stationary state under a diagonal Hamiltonian")
{
    // drive amplitude zero: H stays diagonal, a basis vector never moves
    DriveParams p(10.0, 10.0, 0.0);
    SpinBasis b(2);
    IntegratorConfig cfg;
    cfg.step = 2e-3 / p.chi;
    Trajectory traj = evolve(p, b, CorrectionScheme::none(), initial_css(b), cfg);
    for (const auto& pop : traj.populations) {
        CHECK(pop(0) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(pop.sum() == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("evolve rejects unnormalized input")
{
    DriveParams p = DriveParams::defaults();
    SpinBasis b(2);
    Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(3);
    bad(0) = 0.5;
    CHECK_THROWS(evolve(p, b, CorrectionScheme::none(), bad, IntegratorConfig{}));
}

TEST_CASE("norm conservation and grid alignment")
{
    DriveParams p(10.0, 100.0, 8.8); // alpha = 1.0 chi^2: short window
    SpinBasis b(2);
    IntegratorConfig cfg;
    Trajectory traj = evolve(p, b, CorrectionScheme::none(), initial_css(b), cfg);
    CHECK(traj.max_norm_drift < 1e-8);
    for (const auto& pop : traj.populations)
        CHECK(std::abs(pop.sum() - 1.0) < 1e-8);
    // grid hits the stage boundaries exactly
    auto has_time = [&](double t) {
        for (double x : traj.times)
            if (x == t)
                return true;
        return false;
    };
    CHECK(has_time(p.t_start));
    CHECK(has_time(-10.0 * p.chi / p.alpha));
    CHECK(has_time(0.0));
    CHECK(has_time(p.t_end));
    CHECK(traj.times.front() == p.t_start);
    CHECK(traj.times.back() == p.t_end);
    // decimated states recorded
    CHECK(!traj.states.empty());
    CHECK(traj.states.size() == traj.state_times.size());
}

TEST_CASE("fast protocol transfers population toward the target (N=2)")
{
    DriveParams p(10.0, 100.0, 8.8);
    SpinBasis b(2);
    IntegratorConfig cfg;
    Trajectory none = evolve(p, b, CorrectionScheme::none(), initial_css(b), cfg);
    Trajectory corrected = evolve(p, b, CorrectionScheme::parse("off-cd1+mid-cd3"),
                                  initial_css(b), cfg);
    // monotone benefit of the combined correction
    CHECK(corrected.target_fidelity.back() >=
          none.target_fidelity.back() - 1e-9);
    CHECK(corrected.target_fidelity.back() > 0.9);
}

TEST_CASE("exact scheme pins the instantaneous ground state (N=2, fast)")
{
    DriveParams p(10.0, 100.0, 8.8);
    SpinBasis b(2);
    Trajectory traj =
        evolve(p, b, CorrectionScheme::exact(), initial_css(b), IntegratorConfig{});
    double min_f = 1.0;
    for (double f : traj.gs_fidelity)
        min_f = std::min(min_f, f);
    CHECK(min_f >= 0.999);
}
