#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "postselect/modes.hpp"

using namespace postselect;

namespace {
const Complex I(0.0, 1.0);
const ModelParams canonical{1.0, 0.5, 1.0, 1.0};

// |beta|^2 via the sinh expressions evaluated directly with std::sinh,
// independent of both the Gamma forms and the log-space route
double beta_sq_sinh_oracle(const ModelParams& p, double k) {
    const Frequencies f = frequencies(p, k);
    const double q = pi / p.rho;
    return std::pow(std::sinh(q * f.omega_minus), 2) /
           (std::sinh(q * f.omega_in) * std::sinh(q * f.omega_out));
}
} // namespace

TEST_CASE("mode functions reach their plane-wave asymptotics") {
    const Frequencies f = frequencies(canonical, 1.0);
    {
        const double eta = -10.0;
        const Complex expect =
            std::exp(-I * f.omega_in * eta) / std::sqrt(4.0 * pi * f.omega_in);
        const Complex got = mode_function(canonical, Region::in, 1.0, eta);
        CHECK(std::abs(got - expect) / std::abs(expect) < 1e-6);
    }
    {
        const double eta = 10.0;
        const Complex expect =
            std::exp(-I * f.omega_out * eta) / std::sqrt(4.0 * pi * f.omega_out);
        const Complex got = mode_function(canonical, Region::out, 1.0, eta);
        CHECK(std::abs(got - expect) / std::abs(expect) < 1e-6);
    }
}

TEST_CASE("massless field has identical in and out modes") {
    const ModelParams p{1.0, 0.5, 1.0, 0.0};
    for (double eta : {-7.0, -2.0, 0.0, 1.3, 6.0}) {
        const Complex in = mode_function(p, Region::in, 2.0, eta);
        const Complex out = mode_function(p, Region::out, 2.0, eta);
        CHECK(std::abs(in - out) < 1e-10);
    }
}

TEST_CASE("exact mode values satisfy the Wronskian and the field equation") {
    for (double eta : {-9.0, -1.0, 0.0, 0.4, 3.0, 11.0}) {
        const ModeValue mv = mode_value(canonical, Region::in, 1.0, eta);
        CHECK(std::abs(wronskian(mv.value, mv.derivative) - 1.0) < 1e-12);
        // numerical second derivative vs -(k^2 + m^2 C) chi
        const double h = 1e-5;
        const ModeValue mp = mode_value(canonical, Region::in, 1.0, eta + h);
        const ModeValue mm = mode_value(canonical, Region::in, 1.0, eta - h);
        const Complex d2 = (mp.derivative - mm.derivative) / (2.0 * h);
        const Complex rhs =
            -(1.0 + conformal_scale(canonical, eta)) * mv.value;
        CHECK(std::abs(d2 - rhs) < 1e-6);
    }
}

TEST_CASE("frozen canonical mode value at eta = 0") {
    const ModeValue mv = mode_value(canonical, Region::in, 1.0, 0.0);
    CHECK(std::abs(mv.value - Complex(0.594525688583392, -0.061559029661767918)) < 1e-13);
    CHECK(std::abs(mv.derivative - Complex(-0.138330477009301091, -0.826683387279268334)) < 1e-13);
}

TEST_CASE("closed-form Bogoliubov coefficients") {
    SECTION("massless: no mixing") {
        const ModelParams p{1.0, 0.5, 1.0, 0.0};
        const BogoliubovPair bog = bogoliubov_closed_form(p, 2.0);
        CHECK(bog.beta == Complex(0.0, 0.0));
        CHECK(std::abs(std::abs(bog.alpha) - 1.0) < 1e-15);
    }
    SECTION("static universe: no mixing") {
        const ModelParams p{1.0, 0.0, 1.0, 1.5};
        const BogoliubovPair bog = bogoliubov_closed_form(p, 0.7);
        CHECK(bog.beta == Complex(0.0, 0.0));
    }
    SECTION("|beta|^2 against the sinh oracle, canonical parameters") {
        const BogoliubovPair bog = bogoliubov_closed_form(canonical, 1.0);
        const double oracle = beta_sq_sinh_oracle(canonical, 1.0);
        CHECK(std::abs(std::norm(bog.beta) - oracle) < 1e-12 * oracle);
        CHECK(std::abs(oracle - 2.0653916693769344e-4) < 1e-15);
    }
    SECTION("normalization and sinh agreement over random draws") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> uA(0.6, 2.5), ub(-0.9, 0.9),
            um(0.1, 2.0), uk(0.05, 5.0), ur(0.5, 2.0);
        for (int i = 0; i < 50; ++i) {
            ModelParams p;
            p.A = uA(rng);
            p.B = ub(rng) * p.A;
            p.rho = ur(rng);
            p.m = um(rng);
            const double k = uk(rng);
            const BogoliubovPair bog = bogoliubov_closed_form(p, k);
            CHECK(std::abs(std::norm(bog.alpha) - std::norm(bog.beta) - 1.0) < 1e-10);
            const BogoliubovMagnitudes mags = bogoliubov_sinh_magnitudes(p, k);
            CHECK(std::abs(std::norm(bog.alpha) - mags.alpha_sq) < 1e-10 * mags.alpha_sq);
            if (mags.beta_sq > 0.0)
                CHECK(std::abs(std::norm(bog.beta) - mags.beta_sq) < 1e-10 * mags.beta_sq);
        }
    }
    SECTION("|beta|^2 decays monotonically in k") {
        double prev = std::norm(bogoliubov_closed_form(canonical, 0.5).beta);
        for (double k = 1.0; k <= 6.01; k += 0.5) {
            const double cur = std::norm(bogoliubov_closed_form(canonical, k).beta);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("mode relation in = alpha out + beta conj(out)") {
    CHECK(verify_mode_relation(ModelParams{1.0, 0.5, 1.0, 0.0}, 1.5, 0.8) < 1e-12);
    CHECK(verify_mode_relation(canonical, 1.0, -10.0) < 1e-8);
    CHECK(verify_mode_relation(canonical, 1.0, 0.0) < 1e-8);
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i)
        worst = std::max(worst, verify_mode_relation(canonical, 1.0, -8.0 + 0.8 * i));
    CHECK(worst < 1e-8);
}

TEST_CASE("mode ODE reproduces constant-frequency solutions") {
    SECTION("static universe") {
        const ModelParams p{4.0, 0.0, 1.0, 0.5};
        const Frequencies f = frequencies(p, 1.0);
        const ModeTrajectory traj = solve_mode_ode(p, 1.0, {-10.0, 5.0}, 1e-10);
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.eta_grid.size(); ++i) {
            const Complex exact = std::exp(-I * f.omega_in * traj.eta_grid[i]) /
                                  std::sqrt(2.0 * f.omega_in);
            worst = std::max(worst, std::abs(traj.chi[i] - exact));
        }
        CHECK(worst < 1e-7);
    }
    SECTION("massless field") {
        const ModelParams p{1.0, 0.5, 1.0, 0.0};
        const ModeTrajectory traj = solve_mode_ode(p, 2.0, {-9.0, 6.0}, 1e-10);
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.eta_grid.size(); ++i) {
            const Complex exact =
                std::exp(-I * 2.0 * traj.eta_grid[i]) / std::sqrt(4.0);
            worst = std::max(worst, std::abs(traj.chi[i] - exact));
        }
        CHECK(worst < 1e-7);
    }
}

TEST_CASE("mode ODE conserves the Wronskian") {
    const ModeTrajectory traj = solve_mode_ode(canonical, 1.0, {-10.0, 10.0}, 1e-10);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.eta_grid.size(); ++i)
        worst = std::max(worst,
                         std::abs(wronskian(traj.chi[i], traj.chi_prime[i]) - 1.0));
    CHECK(worst < 1e-8);
}

TEST_CASE("mode ODE validates its span") {
    CHECK_THROWS_AS(solve_mode_ode(canonical, 1.0, {-4.0, 8.0}), usage_error);
    CHECK_THROWS_AS(solve_mode_ode(canonical, 1.0, {-10.0, -12.0}), usage_error);
}

TEST_CASE("instantaneous coefficients") {
    const ModeTrajectory traj = solve_mode_ode(canonical, 1.0, {-10.0, 8.0}, 1e-11);
    SECTION("initial data is instantaneous positive frequency") {
        const InstantaneousCoefficients ic =
            instantaneous_bogoliubov(traj, canonical, traj.eta_grid.front());
        CHECK(std::abs(ic.A - Complex(1.0, 0.0)) < 1e-8);
        CHECK(std::abs(ic.B) < 1e-8);
    }
    SECTION("late-time magnitudes reach the Bogoliubov coefficients") {
        const BogoliubovPair bog = bogoliubov_closed_form(canonical, 1.0);
        const InstantaneousCoefficients ic =
            instantaneous_bogoliubov(traj, canonical, traj.eta_grid.back());
        CHECK(std::abs(std::abs(ic.A) - std::abs(bog.alpha)) < 1e-6);
        CHECK(std::abs(std::abs(ic.B) - std::abs(bog.beta)) < 1e-6);
    }
    SECTION("normalization |A|^2 - |B|^2 = 1 along the trajectory") {
        for (double eta : {-10.0, -3.0, 0.0, 2.0, 8.0}) {
            const InstantaneousCoefficients ic =
                instantaneous_bogoliubov(traj, canonical, eta);
            CHECK(std::abs(std::norm(ic.A) - std::norm(ic.B) - 1.0) < 1e-8);
        }
    }
    SECTION("off-grid evaluation interpolates consistently") {
        const double eta = 0.8137190417; // generic off-grid point
        const InstantaneousCoefficients ic =
            instantaneous_bogoliubov(traj, canonical, eta);
        const ModeValue mv = mode_value(canonical, Region::in, 1.0, eta);
        const double omega = mode_frequency(canonical, 1.0, eta);
        const Complex p_minus =
            (omega * mv.value - I * mv.derivative) / std::sqrt(2.0 * omega);
        CHECK(std::abs(std::abs(ic.B) - std::abs(p_minus)) < 1e-8);
    }
    SECTION("massless: B vanishes identically") {
        const ModelParams p{1.0, 0.5, 1.0, 0.0};
        const ModeTrajectory t0 = solve_mode_ode(p, 1.0, {-10.0, 6.0}, 1e-11);
        for (double eta : {-10.0, -1.0, 0.0, 4.0})
            CHECK(std::abs(instantaneous_bogoliubov(t0, p, eta).B) < 1e-8);
    }
    SECTION("out-of-range eta is rejected") {
        CHECK_THROWS_AS(instantaneous_bogoliubov(traj, canonical, 9.0), usage_error);
    }
}

TEST_CASE("numerical Bogoliubov extraction matches closed form") {
    const ModeTrajectory traj = solve_mode_ode(canonical, 1.0, {-10.0, 8.0}, 1e-10);
    const BogoliubovPair bog = bogoliubov_closed_form(canonical, 1.0);
    const InstantaneousCoefficients ic =
        instantaneous_bogoliubov(traj, canonical, 8.0);
    CHECK(std::abs(std::abs(ic.A) - std::abs(bog.alpha)) < 1e-6);
    CHECK(std::abs(std::abs(ic.B) - std::abs(bog.beta)) < 1e-6);
}
