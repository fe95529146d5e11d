#pragma once

// Gaussian-sector weak-value observables of the cosmology: quasiparticle
// number trajectories between |0_in> and |0_out>, the vacuum overlap and
// effective action, and the weak-minus-expectation stress difference.
//
// Closed-form Gaussian algebra (certified against the truncated Fock
// oracle, see tests): with the projections
//     P+ = (omega chi_in + i chi_in') / sqrt(2 omega),
//     P- = (omega chi_in - i chi_in') / sqrt(2 omega)
// at conformal time eta (so P+ = A e^{-i theta}, P- = B e^{+i theta} in
// instantaneous-coefficient language; the WKB phases cancel),
//
//     w_N(eta) = 2 [ |P-|^2 - conj(P+ P-) beta / conj(alpha) ],
//
// and the per-pair stress difference is
//     Delta_mu_nu(eta) = 2 lambda_k T_mu_nu(chi_in*, chi_in*),
//     lambda_k = -beta_k / conj(alpha_k),
// where T is the symmetrized classical stress bilinear per pair mode:
//     T_00(u,v) = (u' v' + (k^2 + m^2 C) u v) / 2
//     T_01(u,v) = 0 by the +-k phase cancellation
//     T_11(u,v) = (u' v' + (k^2 - m^2 C) u v) / 2
// evaluated on the Klein-Gordon normalized eta-factors.

#include <algorithm>
#include <vector>

#include "postselect/common.hpp"
#include "postselect/modes.hpp"
#include "postselect/weakcore.hpp"

namespace postselect {

struct WeakTrajectory {
    double k = 0.0;
    std::vector<double> eta_grid;
    std::vector<Complex> w_n; // per-mode-pair quasiparticle-number weak value
};

struct StressDifference {
    double eta = 0.0;
    Complex d_t00;
    Complex d_t01;
    Complex d_t11;
    double k_max = 0.0;
    int n_modes = 0;
};

struct VacuumOverlapResult {
    std::vector<Complex> per_mode; // <0_out|0_in> per pair, real positive
    double product_magnitude = 1.0;
    Complex effective_action;     // W with e^{iW} = product, Im(W) >= 0
};

// positive-frequency/negative-frequency projections of the exact in mode
struct ProjectionPair {
    Complex p_plus;
    Complex p_minus;
};

inline ProjectionPair mode_projections(const ModelParams& params, double k, double eta) {
    const ModeValue mv = mode_value(params, Region::in, k, eta);
    const double omega = mode_frequency(params, k, eta);
    const double rn = 1.0 / std::sqrt(2.0 * omega);
    const Complex i_unit(0.0, 1.0);
    return {(omega * mv.value + i_unit * mv.derivative) * rn,
            (omega * mv.value - i_unit * mv.derivative) * rn};
}

inline Complex weak_number_value(const ProjectionPair& pr, const BogoliubovPair& bog) {
    return 2.0 * (std::norm(pr.p_minus) -
                  std::conj(pr.p_plus * pr.p_minus) * bog.beta / std::conj(bog.alpha));
}

inline WeakTrajectory weak_number_trajectory(const ModelParams& params, double k,
                                             std::vector<double> eta_grid) {
    params.validate();
    if (eta_grid.size() < 2)
        throw usage_error("weak_number_trajectory: need at least two grid points");
    if (!std::is_sorted(eta_grid.begin(), eta_grid.end()))
        throw usage_error("weak_number_trajectory: eta grid must be ordered");
    if (!(params.rho * eta_grid.front() <= -8.0 && params.rho * eta_grid.back() >= 8.0))
        throw usage_error("weak_number_trajectory: grid endpoints must satisfy |rho eta| >= 8");
    const BogoliubovPair bog = bogoliubov_closed_form(params, k);
    WeakTrajectory traj;
    traj.k = k;
    traj.eta_grid = std::move(eta_grid);
    traj.w_n.reserve(traj.eta_grid.size());
    for (double eta : traj.eta_grid)
        traj.w_n.push_back(weak_number_value(mode_projections(params, k, eta), bog));
    return traj;
}

// pair-diagonal coefficient of the stress-difference mode sum
inline Complex lambda_coefficient(const ModelParams& params, double k) {
    const BogoliubovPair bog = bogoliubov_closed_form(params, k);
    return -bog.beta / std::conj(bog.alpha);
}

namespace detail {

// Collapses a symmetric k grid to positive pair labels: each pair (k, -k)
// may appear as both signs or once; k = 0 has no partner mode.
inline std::vector<double> pair_labels(const std::vector<double>& k_grid) {
    if (k_grid.empty())
        throw usage_error("k grid must be non-empty");
    std::vector<double> pos;
    for (double k : k_grid) {
        if (k == 0.0)
            throw usage_error("k = 0 carries no (k, -k) pair; use a grid excluding zero");
        pos.push_back(std::abs(k));
    }
    std::sort(pos.begin(), pos.end());
    std::vector<double> out;
    for (double k : pos)
        if (out.empty() || k - out.back() > 1e-12 * std::max(1.0, k))
            out.push_back(k);
    return out;
}

} // namespace detail

inline StressDifference stress_difference(const ModelParams& params, double eta,
                                          const std::vector<double>& k_grid) {
    params.validate();
    const std::vector<double> pairs = detail::pair_labels(k_grid);
    const double msqC = params.m * params.m * conformal_scale(params, eta);
    StressDifference res;
    res.eta = eta;
    res.n_modes = static_cast<int>(pairs.size());
    res.k_max = pairs.back();
    for (double k : pairs) {
        const Complex lam = lambda_coefficient(params, k);
        const ModeValue mv = mode_value(params, Region::in, k, eta);
        const Complex u = std::conj(mv.value);
        const Complex up = std::conj(mv.derivative);
        // d_x u*_k d_x u*_{-k} = k^2 u*^2, d_eta u*_k d_x u*_{-k} cancels
        const Complex t00 = 0.5 * (up * up + (k * k + msqC) * u * u);
        const Complex t01 = 0.5 * (up * (Complex(0.0, k) * u) + (Complex(0.0, -k) * u) * up);
        const Complex t11 = 0.5 * (up * up + (k * k - msqC) * u * u);
        res.d_t00 += 2.0 * lam * t00;
        res.d_t01 += 2.0 * lam * t01;
        res.d_t11 += 2.0 * lam * t11;
    }
    return res;
}

inline VacuumOverlapResult vacuum_overlap(const ModelParams& params,
                                          const std::vector<double>& k_grid) {
    params.validate();
    const std::vector<double> pairs = detail::pair_labels(k_grid);
    VacuumOverlapResult res;
    double log_product = 0.0;
    for (double k : pairs) {
        const BogoliubovPair bog = bogoliubov_closed_form(params, k);
        const double mag = 1.0 / std::abs(bog.alpha);
        res.per_mode.emplace_back(mag, 0.0);
        log_product += std::log(mag);
    }
    res.product_magnitude = std::exp(log_product);
    // e^{iW} = <0_out|0_in>; the product is real positive, so W is purely
    // imaginary with Im W = -log(product) = sum_k log|alpha_k| >= 0
    res.effective_action = Complex(0.0, -log_product);
    return res;
}

// ---- operator builders for oracle certification ----

// Instantaneous quasiparticle-number operator of the (k, -k) pair in the
// truncated out basis: N = b_k^dag b_k + b_-k^dag b_-k with
// b_k = P+ a_in,k + conj(P-) a_in,-k^dag.
inline OperatorMatrix instantaneous_number_operator(const BogoliubovPair& bog,
                                                    const ProjectionPair& pr,
                                                    const PairFockBasis& basis) {
    const SparseMatrix ak = basis.in_annihilator_k(bog);
    const SparseMatrix amk = basis.in_annihilator_minus_k(bog);
    const SparseMatrix bk(pr.p_plus * ak + std::conj(pr.p_minus) * SparseMatrix(amk.adjoint()));
    const SparseMatrix bmk(pr.p_plus * amk + std::conj(pr.p_minus) * SparseMatrix(ak.adjoint()));
    const SparseMatrix n(SparseMatrix(bk.adjoint()) * bk + SparseMatrix(bmk.adjoint()) * bmk);
    return OperatorMatrix(Matrix(n), true);
}

enum class StressComponent { t00, t01, t11 };

// Stress operator of the pair at x = 0, built from the same mode bilinears
// and in-basis ladder matrices as the closed form:
//   phi = (a_k + a_-k) chi + h.c.,  pi = d_eta phi,
//   d_x phi = i k (a_k - a_-k) chi + h.c.
inline OperatorMatrix pair_stress_operator(const BogoliubovPair& bog, Complex chi,
                                           Complex chi_prime, double k, double msqC,
                                           StressComponent comp, const PairFockBasis& basis) {
    const SparseMatrix ak = basis.in_annihilator_k(bog);
    const SparseMatrix amk = basis.in_annihilator_minus_k(bog);
    const SparseMatrix akd(ak.adjoint());
    const SparseMatrix amkd(amk.adjoint());
    const Complex ik(0.0, k);
    const SparseMatrix phi(chi * (ak + amk) + std::conj(chi) * (akd + amkd));
    const SparseMatrix pi(chi_prime * (ak + amk) + std::conj(chi_prime) * (akd + amkd));
    const SparseMatrix dx(ik * chi * (ak - amk) - ik * std::conj(chi) * (akd - amkd));
    SparseMatrix t;
    switch (comp) {
    case StressComponent::t00:
        t = SparseMatrix(0.5 * (pi * pi + dx * dx) + (0.5 * msqC) * (phi * phi));
        break;
    case StressComponent::t01:
        t = SparseMatrix(0.5 * (pi * dx + dx * pi));
        break;
    case StressComponent::t11:
        t = SparseMatrix(0.5 * (pi * pi + dx * dx) - (0.5 * msqC) * (phi * phi));
        break;
    }
    return OperatorMatrix(Matrix(t), true);
}

} // namespace postselect
