#pragma once

// In/out mode functions of the tanh cosmology in closed hypergeometric
// form, the Gamma-function Bogoliubov coefficients connecting them, a
// numerical mode-equation solver and instantaneous (Hamiltonian
// diagonalization) coefficients along a trajectory.
//
// Conventions. The wave equation for the eta-dependent factor is
//     chi'' + (k^2 + m^2 C(eta)) chi = 0,
// and chi is Klein-Gordon normalized, chi -> (2 omega)^{-1/2} e^{-i omega eta}
// in the mode's own asymptotic region, so the Wronskian
// i (chi' chi* - chi*' chi) equals 1. The public mode_function carries the
// plane-wave normalization (4 pi omega)^{-1/2} instead, i.e. mode_function =
// chi / sqrt(2 pi). The in mode connects to the out modes as
//     chi_in = alpha chi_out + beta conj(chi_out),
// with alpha, beta the Gamma-form coefficients below.

#include <algorithm>
#include <vector>

#include "postselect/common.hpp"
#include "postselect/model.hpp"
#include "postselect/ode.hpp"
#include "postselect/quadrature.hpp"
#include "postselect/specfun.hpp"

namespace postselect {

enum class Region { in, out };

struct BogoliubovPair {
    Complex alpha;
    Complex beta;
};

// |alpha|^2 and |beta|^2 via the sinh closed forms, an algebraic route
// independent of the Gamma functions.
struct BogoliubovMagnitudes {
    double alpha_sq;
    double beta_sq;
};

struct ModeTrajectory {
    double k = 0.0;
    std::vector<double> eta_grid;
    std::vector<Complex> chi;
    std::vector<Complex> chi_prime;
};

struct InstantaneousCoefficients {
    Complex A;    // positive-frequency coefficient, |A|^2 - |B|^2 = 1
    Complex B;    // negative-frequency (pair-creation) coefficient
    double theta; // accumulated WKB phase, theta(eta0) = omega_in * eta0
};

namespace detail {

inline double log_sinh(double x) {
    // x > 0; log(sinh x) = x - log 2 + log1p(-e^{-2x})
    return x - 0.6931471805599453094 + std::log1p(-std::exp(-2.0 * x));
}

// chi and chi' for one region at one eta, assembled so that the argument
// of every hypergeometric series stays <= 1/2 and all prefactor logs are
// formed analytically (the naive argument (1 +- tanh)/2 rounds to 1 for
// |rho eta| >~ 19).
struct ModeValue {
    Complex value;
    Complex derivative;
};

inline ModeValue mode_value_kg(const ModelParams& p, Region region, double k, double eta) {
    const Frequencies fr = frequencies(p, k);
    const double rho = p.rho;
    const Complex a(1.0, fr.omega_minus / rho);
    const Complex b(0.0, fr.omega_minus / rho);
    const double s = rho * eta;
    const double abs_s = std::abs(s);
    // z = (1 + tanh s)/2 and w = 1 - z, each formed on its own small side
    const double small = 1.0 / (1.0 + std::exp(2.0 * abs_s)); // min(z, w)
    const double big = 1.0 - small;
    const double ln_small = -(2.0 * abs_s + std::log1p(std::exp(-2.0 * abs_s)));
    const double L = abs_s + std::log1p(std::exp(-2.0 * abs_s)); // log(2 cosh s)
    const double th = std::tanh(s);

    const Complex i(0.0, 1.0);
    const Complex pref = -i * fr.omega_plus * eta - i * (fr.omega_minus / rho) * L;
    const Complex pref_d = -i * fr.omega_plus - i * fr.omega_minus * th;

    const double omega_own = (region == Region::in) ? fr.omega_in : fr.omega_out;
    const Complex c = (region == Region::in) ? Complex(1.0, -fr.omega_in / rho)
                                             : Complex(1.0, fr.omega_out / rho);
    const double norm = 1.0 / std::sqrt(2.0 * omega_own);

    // Is the series argument of this region's 2F1 already the small one?
    // in-region argument is z (small for eta <= 0); out-region argument is w.
    const bool direct = (region == Region::in) ? (s <= 0.0) : (s >= 0.0);

    if (direct) {
        const double x = small;
        // dx/deta = +- 2 rho z w, sign from the chain rule of each argument
        const double dx = (region == Region::in ? 2.0 : -2.0) * rho * small * big;
        const Complex F = hyp2f1(a, b, c, x);
        const Complex Fd = (a * b / c) * hyp2f1(a + 1.0, b + 1.0, c + 1.0, x);
        const Complex E = std::exp(pref);
        return {norm * E * F, norm * E * (pref_d * F + Fd * dx)};
    }

    // opposite asymptotic side: linear transformation to argument 1 - x
    const Complex cab = c - a - b; // -+ i omega_out/in / rho, never integral
    const Complex g1 = detail::gamma_quotient(c, cab, c - a, c - b);
    const Complex g2 = detail::gamma_quotient(c, -cab, a, b);
    const double x = small; // the transformed argument
    const double dx = (region == Region::in ? -2.0 : 2.0) * rho * small * big;
    const Complex a1 = a, b1 = b, c1 = a + b - c + 1.0;
    const Complex a2 = c - a, b2 = c - b, c2 = cab + 1.0;
    const Complex F1 = hyp2f1(a1, b1, c1, x);
    const Complex F1d = (a1 * b1 / c1) * hyp2f1(a1 + 1.0, b1 + 1.0, c1 + 1.0, x);
    const Complex F2 = hyp2f1(a2, b2, c2, x);
    const Complex F2d = (a2 * b2 / c2) * hyp2f1(a2 + 1.0, b2 + 1.0, c2 + 1.0, x);
    const Complex E1 = std::exp(pref);
    const Complex E2 = std::exp(pref + cab * ln_small); // pref * small^(c-a-b), stable
    // d/deta [cab * log(x)] = cab * (dx/x); dx/x = -+ 2 rho big, formed
    // analytically so the ratio survives x underflowing to zero
    const Complex dlog = cab * ((region == Region::in ? -2.0 : 2.0) * rho * big);
    Complex value = E1 * g1 * F1 + E2 * g2 * F2;
    Complex der = E1 * (pref_d * g1 * F1 + g1 * F1d * dx) +
                  E2 * ((pref_d + dlog) * g2 * F2 + g2 * F2d * dx);
    return {norm * value, norm * der};
}

} // namespace detail

using detail::ModeValue;

// Klein-Gordon normalized eta-factor (Wronskian 1) with its eta-derivative.
inline ModeValue mode_value(const ModelParams& p, Region region, double k, double eta) {
    return detail::mode_value_kg(p, region, k, eta);
}

// eta-dependent factor of u_k with the (4 pi omega)^{-1/2} normalization
// (spatial phase e^{ikx} excluded).
inline Complex mode_function(const ModelParams& p, Region region, double k, double eta) {
    static const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * pi);
    return detail::mode_value_kg(p, region, k, eta).value * inv_sqrt_2pi;
}

// Gamma-form Bogoliubov coefficients, evaluated in log space. For
// omega_minus = 0 (massless or static universe) there is no mixing.
inline BogoliubovPair bogoliubov_closed_form(const ModelParams& p, double k) {
    const Frequencies fr = frequencies(p, k);
    if (fr.omega_minus == 0.0)
        return {Complex(1.0, 0.0), Complex(0.0, 0.0)};
    const double rho = p.rho;
    const Complex i(0.0, 1.0);
    const double half_log_ratio = 0.5 * std::log(fr.omega_out / fr.omega_in);
    const Complex ln_alpha = half_log_ratio
        + ln_gamma(1.0 - i * fr.omega_in / rho) + ln_gamma(-i * fr.omega_out / rho)
        - ln_gamma(-i * fr.omega_plus / rho) - ln_gamma(1.0 - i * fr.omega_plus / rho);
    const Complex ln_beta = half_log_ratio
        + ln_gamma(1.0 - i * fr.omega_in / rho) + ln_gamma(i * fr.omega_out / rho)
        - ln_gamma(i * fr.omega_minus / rho) - ln_gamma(1.0 + i * fr.omega_minus / rho);
    return {std::exp(ln_alpha), std::exp(ln_beta)};
}

inline BogoliubovMagnitudes bogoliubov_sinh_magnitudes(const ModelParams& p, double k) {
    const Frequencies fr = frequencies(p, k);
    if (fr.omega_minus == 0.0) return {1.0, 0.0};
    const double q = pi / p.rho;
    const double d = detail::log_sinh(q * fr.omega_in) + detail::log_sinh(q * fr.omega_out);
    return {std::exp(2.0 * detail::log_sinh(q * fr.omega_plus) - d),
            std::exp(2.0 * detail::log_sinh(q * fr.omega_minus) - d)};
}

// |chi_in - alpha chi_out - beta conj(chi_out)| with the (4 pi omega)^{-1/2}
// normalized eta-factors; the u*_{-k} spatial phase cancels against e^{ikx}
// since omega(-k) = omega(k).
inline double verify_mode_relation(const ModelParams& p, double k, double eta) {
    const BogoliubovPair bog = bogoliubov_closed_form(p, k);
    const Complex u_in = mode_function(p, Region::in, k, eta);
    const Complex u_out = mode_function(p, Region::out, k, eta);
    return std::abs(u_in - bog.alpha * u_out - bog.beta * std::conj(u_out));
}

// Integrates chi'' + (k^2 + m^2 C) chi = 0 from plane-wave initial data in
// the in region. n_output = 0 records a uniform grid of 32 points per unit
// of rho eta (at least 64 points); otherwise exactly n_output points.
inline ModeTrajectory solve_mode_ode(const ModelParams& p, double k,
                                     std::pair<double, double> eta_span,
                                     double tol = 1e-10,
                                     std::size_t n_output = 0) {
    p.validate();
    const Frequencies fr = frequencies(p, k);
    const auto [eta0, eta1] = eta_span;
    if (!(eta0 < eta1))
        throw usage_error("solve_mode_ode: eta span must be increasing");
    if (!(p.rho * eta0 <= -8.0))
        throw usage_error("solve_mode_ode: span must start in the in region (rho eta <= -8)");
    if (n_output == 0) {
        const double units = p.rho * (eta1 - eta0);
        n_output = std::max<std::size_t>(64, static_cast<std::size_t>(32.0 * units) + 1);
    }
    if (n_output < 2)
        throw usage_error("solve_mode_ode: need at least two output points");

    std::vector<double> grid(n_output);
    for (std::size_t i = 0; i < n_output; ++i)
        grid[i] = eta0 + (eta1 - eta0) * static_cast<double>(i) /
                             static_cast<double>(n_output - 1);
    grid.back() = eta1;

    ModeTrajectory traj;
    traj.k = k;
    traj.eta_grid = grid;
    traj.chi.resize(n_output);
    traj.chi_prime.resize(n_output);

    const Complex i_unit(0.0, 1.0);
    const Complex chi0 = std::exp(-i_unit * fr.omega_in * eta0) / std::sqrt(2.0 * fr.omega_in);
    std::array<Complex, 2> y{chi0, -i_unit * fr.omega_in * chi0};

    OdeOptions opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2;
    const double ksq = k * k, msq = p.m * p.m;
    integrate_ode<2>(
        [&](double eta, const std::array<Complex, 2>& s) {
            return std::array<Complex, 2>{
                s[1], -(ksq + msq * conformal_scale(p, eta)) * s[0]};
        },
        grid, y, opt,
        [&](std::size_t idx, double, const std::array<Complex, 2>& s) {
            traj.chi[idx] = s[0];
            traj.chi_prime[idx] = s[1];
        });
    return traj;
}

inline double wronskian(Complex chi, Complex chi_prime) {
    // i (chi' chi* - chi*' chi) = -2 Im(chi' chi*)
    return -2.0 * std::imag(chi_prime * std::conj(chi));
}

namespace detail {

// two-point quintic Hermite interpolation using chi, chi' and the equation
// of motion for chi'' at both bracket ends
inline void hermite_quintic(const ModelParams& p, double k,
                            double ta, Complex ya, Complex da,
                            double tb, Complex yb, Complex db,
                            double t, Complex& y, Complex& d) {
    auto accel = [&](double eta, Complex chi) {
        return -(k * k + p.m * p.m * conformal_scale(p, eta)) * chi;
    };
    const Complex aa = accel(ta, ya), ab = accel(tb, yb);
    const double h = tb - ta, u = (t - ta) / h;
    // quintic Hermite basis on [0,1] matching value, 1st and 2nd derivatives
    const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
    const double h00 = 1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5;
    const double h10 = u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5;
    const double h20 = 0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5;
    const double h01 = 10.0 * u3 - 15.0 * u4 + 6.0 * u5;
    const double h11 = -4.0 * u3 + 7.0 * u4 - 3.0 * u5;
    const double h21 = 0.5 * u3 - u4 + 0.5 * u5;
    y = h00 * ya + h10 * h * da + h20 * h * h * aa +
        h01 * yb + h11 * h * db + h21 * h * h * ab;
    const double g00 = (-30.0 * u2 + 60.0 * u3 - 30.0 * u4) / h;
    const double g10 = (1.0 - 18.0 * u2 + 32.0 * u3 - 15.0 * u4);
    const double g20 = (u - 4.5 * u2 + 6.0 * u3 - 2.5 * u4) * h;
    const double g01 = (30.0 * u2 - 60.0 * u3 + 30.0 * u4) / h;
    const double g11 = (-12.0 * u2 + 28.0 * u3 - 15.0 * u4);
    const double g21 = (1.5 * u2 - 4.0 * u3 + 2.5 * u4) * h;
    d = g00 * ya + g10 * da + g20 * aa + g01 * yb + g11 * db + g21 * ab;
}

} // namespace detail

// Instantaneous positive/negative frequency coefficients at eta, from
// Hamiltonian diagonalization of the trajectory:
//   A e^{-i theta} = (omega chi + i chi') / sqrt(2 omega)
//   B e^{+i theta} = (omega chi - i chi') / sqrt(2 omega)
// with omega(eta)^2 = k^2 + m^2 C(eta) and the WKB phase
// theta(eta) = omega_in eta0 + integral_{eta0}^{eta} omega, whose constant
// makes (A, B) = (1, 0) exactly on the initial data.
inline InstantaneousCoefficients instantaneous_bogoliubov(const ModeTrajectory& traj,
                                                          const ModelParams& p,
                                                          double eta) {
    if (traj.eta_grid.size() < 2)
        throw usage_error("instantaneous_bogoliubov: trajectory has no grid");
    const double lo = traj.eta_grid.front(), hi = traj.eta_grid.back();
    if (!(eta >= lo && eta <= hi))
        throw usage_error("instantaneous_bogoliubov: eta outside trajectory range");

    Complex chi, chi_prime;
    const auto it = std::lower_bound(traj.eta_grid.begin(), traj.eta_grid.end(), eta);
    std::size_t j = static_cast<std::size_t>(it - traj.eta_grid.begin());
    const double snap = 1e-12 * (1.0 + std::abs(eta));
    if (j < traj.eta_grid.size() && std::abs(traj.eta_grid[j] - eta) <= snap) {
        chi = traj.chi[j];
        chi_prime = traj.chi_prime[j];
    } else if (j > 0 && std::abs(traj.eta_grid[j - 1] - eta) <= snap) {
        chi = traj.chi[j - 1];
        chi_prime = traj.chi_prime[j - 1];
    } else {
        if (j == 0 || j == traj.eta_grid.size())
            throw usage_error("instantaneous_bogoliubov: eta outside trajectory range");
        detail::hermite_quintic(p, traj.k,
                                traj.eta_grid[j - 1], traj.chi[j - 1], traj.chi_prime[j - 1],
                                traj.eta_grid[j], traj.chi[j], traj.chi_prime[j],
                                eta, chi, chi_prime);
    }

    const Frequencies fr = frequencies(p, traj.k);
    const double omega = mode_frequency(p, traj.k, eta);
    const double eta0 = traj.eta_grid.front();
    const double theta = fr.omega_in * eta0 +
        integrate([&](double e) { return mode_frequency(p, traj.k, e); }, eta0, eta, 1e-12);
    const Complex i_unit(0.0, 1.0);
    const double rn = 1.0 / std::sqrt(2.0 * omega);
    const Complex p_plus = (omega * chi + i_unit * chi_prime) * rn;
    const Complex p_minus = (omega * chi - i_unit * chi_prime) * rn;
    InstantaneousCoefficients out;
    out.theta = theta;
    out.A = p_plus * std::exp(i_unit * theta);
    out.B = p_minus * std::exp(-i_unit * theta);
    return out;
}

} // namespace postselect
