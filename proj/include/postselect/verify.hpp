#pragma once

// Self-contained invariant suite behind the `verify` subcommand: every
// check recomputes its quantities from scratch (no inputs beyond the
// configuration, no files, no network) and compares against a named
// tolerance from the configuration.

#include <random>
#include <string>
#include <vector>

#include "postselect/config.hpp"
#include "postselect/modes.hpp"
#include "postselect/weakcore.hpp"
#include "postselect/weakfield.hpp"

namespace postselect {

struct VerifyCheck {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

namespace detail {

inline ModelParams draw_params(std::mt19937_64& rng, double omega_cap) {
    std::uniform_real_distribution<double> uk(0.0, 12.0), um(0.05, 2.5),
        uA(0.6, 3.0), ufrac(-0.95, 0.95), urho(0.5, 2.0);
    for (;;) {
        ModelParams p;
        p.A = uA(rng);
        p.B = ufrac(rng) * p.A;
        p.rho = urho(rng);
        p.m = um(rng);
        const double k = uk(rng);
        const Frequencies fr = frequencies(p, k);
        if (std::max(fr.omega_in, fr.omega_out) / p.rho <= omega_cap) {
            (void)k;
            return p;
        }
    }
}

inline double draw_k(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uk(0.05, 6.0);
    return uk(rng);
}

} // namespace detail

inline std::vector<VerifyCheck> run_verification(const RunConfig& cfg) {
    std::vector<VerifyCheck> checks;
    auto record = [&](const std::string& name, double err, double fallback_tol) {
        VerifyCheck c;
        c.name = name;
        c.max_error = err;
        c.tolerance = cfg.tolerance(name, fallback_tol);
        c.pass = err <= c.tolerance;
        checks.push_back(c);
    };

    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const Complex i_unit(0.0, 1.0);

    // Gamma recurrence Gamma(z+1) = z Gamma(z) and reflection
    // Gamma(z) Gamma(1-z) = pi / sin(pi z) on 100 draws, |z| <= 10
    {
        double rec_err = 0.0, ref_err = 0.0;
        int done = 0;
        while (done < 100) {
            const Complex z(10.0 * unit(rng), 10.0 * unit(rng));
            if (std::abs(z.imag()) < 0.05 &&
                (std::abs(z.real() - std::round(z.real())) < 0.05))
                continue; // keep away from poles of z, 1-z and z+1
            const Complex rec = std::exp(ln_gamma(z + 1.0) - ln_gamma(z)) / z;
            rec_err = std::max(rec_err, std::abs(rec - 1.0));
            const Complex refl =
                std::exp(ln_gamma(z) + ln_gamma(1.0 - z)) * std::sin(pi * z) / pi;
            ref_err = std::max(ref_err, std::abs(refl - 1.0));
            ++done;
        }
        record("gamma_recurrence", rec_err, 1e-12);
        record("gamma_reflection", ref_err, 1e-10);
    }

    // series route vs 1-z transformation route at the overlap points
    {
        double err = 0.0;
        std::uniform_real_distribution<double> uq(0.02, 10.0);
        for (int i = 0; i < 40; ++i) {
            const double q = uq(rng), p = uq(rng);
            const Complex a(1.0, q), b(0.0, q), c(1.0, -p);
            for (double z : {0.4, 0.6}) {
                const Complex s = detail::hyp2f1_series(a, b, c, z);
                const Complex t = detail::hyp2f1_transform(a, b, c, z);
                err = std::max(err, std::abs(s - t) / std::abs(s));
            }
        }
        record("hyp2f1_routes", err, 1e-9);
    }

    // Bogoliubov: bosonic normalization and Gamma-form vs sinh-form
    {
        double id_err = 0.0, sinh_err = 0.0;
        for (int i = 0; i < 200; ++i) {
            const ModelParams p = detail::draw_params(rng, 20.0);
            const double k = detail::draw_k(rng);
            const BogoliubovPair bog = bogoliubov_closed_form(p, k);
            const BogoliubovMagnitudes mags = bogoliubov_sinh_magnitudes(p, k);
            id_err = std::max(id_err,
                              std::abs(std::norm(bog.alpha) - std::norm(bog.beta) - 1.0));
            sinh_err = std::max(sinh_err,
                                std::abs(std::norm(bog.alpha) - mags.alpha_sq) / mags.alpha_sq);
            if (mags.beta_sq > 0.0)
                sinh_err = std::max(sinh_err,
                                    std::abs(std::norm(bog.beta) - mags.beta_sq) / mags.beta_sq);
        }
        record("bogoliubov_identity", id_err, 1e-10);
        record("bogoliubov_sinh", sinh_err, 1e-10);
    }

    // Wronskian conservation along a numerically integrated trajectory
    {
        const double rho = cfg.model.rho;
        const ModeTrajectory traj = solve_mode_ode(
            cfg.model, cfg.trajectory_k, {-10.0 / rho, 10.0 / rho},
            cfg.tolerance("ode", 1e-10));
        double err = 0.0;
        for (std::size_t i = 0; i < traj.eta_grid.size(); ++i)
            err = std::max(err, std::abs(wronskian(traj.chi[i], traj.chi_prime[i]) - 1.0));
        record("wronskian", err, 1e-8);
    }

    // in = alpha out + beta conj(out) on a 21-point grid
    {
        double err = 0.0;
        for (int i = 0; i < 21; ++i) {
            const double eta = (-8.0 + i * 0.8) / cfg.model.rho;
            err = std::max(err, verify_mode_relation(cfg.model, cfg.trajectory_k, eta));
        }
        record("mode_relation", err, 1e-8);
    }

    // quasiparticle weak value vanishes in both asymptotic regions
    {
        const double rho = cfg.model.rho;
        const WeakTrajectory traj = weak_number_trajectory(
            cfg.model, cfg.trajectory_k, {-8.0 / rho, 0.0, 8.0 / rho});
        const double err = std::max(std::abs(traj.w_n.front()), std::abs(traj.w_n.back()));
        record("trajectory_endpoints", err, 1e-6);
    }

    // closed-form Gaussian algebra vs the truncated Fock oracle at eta = 0
    {
        const ModelParams& p = cfg.model;
        const double k = cfg.trajectory_k;
        const BogoliubovPair bog = bogoliubov_closed_form(p, k);
        const PairFockBasis basis(cfg.n_max);
        const ProjectionPair pr = mode_projections(p, k, 0.0);
        double err = 0.0;
        {
            const OperatorMatrix n_op = instantaneous_number_operator(bog, pr, basis);
            const Complex oracle = oracle_pair_weak_value(bog, n_op, basis).value;
            err = std::max(err, std::abs(oracle - weak_number_value(pr, bog)));
        }
        const ModeValue mv = mode_value(p, Region::in, k, 0.0);
        const double msqC = p.m * p.m * conformal_scale(p, 0.0);
        const StressDifference closed = stress_difference(p, 0.0, {k});
        const StateVector psi_in = in_vacuum_in_out_basis(bog, basis);
        const Complex closed_by[3] = {closed.d_t00, closed.d_t01, closed.d_t11};
        const StressComponent comps[3] = {StressComponent::t00, StressComponent::t01,
                                          StressComponent::t11};
        for (int c = 0; c < 3; ++c) {
            const OperatorMatrix t_op = pair_stress_operator(bog, mv.value, mv.derivative,
                                                             k, msqC, comps[c], basis);
            const Complex weak = oracle_pair_weak_value(bog, t_op, basis).value;
            const Complex expect = psi_in.amplitudes.dot(t_op.entries * psi_in.amplitudes);
            err = std::max(err, std::abs((weak - expect) - closed_by[c]));
        }
        record("gaussian_vs_oracle", err, 1e-8);
    }

    // oracle vacuum overlap = 1/|alpha|
    {
        const BogoliubovPair bog = bogoliubov_closed_form(cfg.model, cfg.trajectory_k);
        const PairFockBasis basis(cfg.n_max);
        const StateVector psi_in = in_vacuum_in_out_basis(bog, basis);
        const double err =
            std::abs(std::abs(psi_in.amplitudes[0]) - 1.0 / std::abs(bog.alpha));
        record("vacuum_overlap", err, 1e-10);
    }

    // finite-dimensional miracle numbers
    {
        const MiracleInputs& mi = cfg.miracle;
        double err = std::abs(miracle_number_weak(mi.alpha, mi.beta, mi.gamma, mi.delta) -
                              Complex(-1.0, 0.0));
        const auto [t00, t11] =
            miracle_stress_weak(mi.alpha, mi.beta, mi.gamma, mi.delta, mi.omega, mi.k);
        err = std::max(err, std::abs(t00 - Complex(-mi.omega, 0.0)));
        err = std::max(err, std::abs(t11 - Complex(-mi.k, 0.0)));
        // cross-check against the general engine on d = 2 with N = diag(0,1)
        Vector vin(2), vout(2);
        vin << mi.alpha, mi.beta;
        vout << mi.gamma, mi.delta;
        Matrix n = Matrix::Zero(2, 2);
        n(1, 1) = 1.0;
        const WeakValueResult wr =
            weak_value(StateVector(vin), StateVector(vout), OperatorMatrix(n, true),
                       OperatorMatrix(Matrix::Zero(2, 2), true), 0.0, 0.0, 0.0);
        err = std::max(err, std::abs(wr.value - Complex(-1.0, 0.0)));
        record("miracle", err, 1e-12);
    }

    // conformal triviality: m = 0 switches every effect off exactly
    {
        ModelParams p = cfg.model;
        p.m = 0.0;
        const double k = cfg.trajectory_k;
        const BogoliubovPair bog = bogoliubov_closed_form(p, k);
        double err = std::abs(bog.beta);
        err = std::max(err, std::abs(std::abs(bog.alpha) - 1.0));
        for (double eta : {-8.0 / p.rho, -1.0, 0.5, 8.0 / p.rho})
            err = std::max(err, std::abs(weak_number_value(mode_projections(p, k, eta), bog)));
        const StressDifference sd = stress_difference(p, 0.0, {k, 2.0 * k});
        err = std::max(err, std::abs(sd.d_t00));
        err = std::max(err, std::abs(sd.d_t01));
        err = std::max(err, std::abs(sd.d_t11));
        const VacuumOverlapResult ov = vacuum_overlap(p, {k, 2.0 * k});
        err = std::max(err, std::abs(ov.product_magnitude - 1.0));
        err = std::max(err, std::abs(ov.effective_action));
        record("conformal_trivial", err, 1e-12);
    }

    // Post-selecting the evolved pre-selection turns the weak value into
    // the expectation value, with vanishing imaginary part.
    {
        const Eigen::Index d = 6;
        std::mt19937_64 rng2(7);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        auto rand_herm = [&]() {
            Matrix m(d, d);
            for (Eigen::Index r = 0; r < d; ++r)
                for (Eigen::Index c = 0; c < d; ++c)
                    m(r, c) = Complex(u(rng2), u(rng2));
            return Matrix(0.5 * (m + m.adjoint()));
        };
        const OperatorMatrix h(rand_herm(), true);
        const OperatorMatrix c_obs(rand_herm(), true);
        Vector vin(d);
        for (Eigen::Index r = 0; r < d; ++r) vin[r] = Complex(u(rng2), u(rng2));
        const StateVector in(vin);
        const double t_in = 0.0, t = 0.7, t_out = 1.9;
        const StateVector out(
            Vector(matrix_exponential(-i_unit * (t_out - t_in) * h.entries) * in.amplitudes));
        const WeakValueResult wr = weak_value(in, out, c_obs, h, t_in, t, t_out);
        const Vector evolved =
            matrix_exponential(-i_unit * (t - t_in) * h.entries) * in.amplitudes;
        const Complex expect = evolved.dot(c_obs.entries * evolved);
        double err = std::abs(wr.value - expect);
        err = std::max(err, std::abs(wr.value.imag()));
        record("expectation_reduction", err, 1e-12);
    }

    return checks;
}

} // namespace postselect
