#pragma once

// The 1+1 dimensional tanh cosmology: conformal scale factor
// C(eta) = A + B tanh(rho eta), its cosmic-time relation and the
// asymptotic dispersion frequencies of a scalar field of mass m.

#include <cstdio>

#include "postselect/common.hpp"
#include "postselect/quadrature.hpp"

namespace postselect {

struct ModelParams {
    double A = 1.0;   // conformal-scale offset
    double B = 0.5;   // conformal-scale amplitude
    double rho = 1.0; // expansion rate
    double m = 1.0;   // field mass

    // A > |B| keeps C(eta) > 0 everywhere
    void validate() const {
        if (!(std::isfinite(A) && std::isfinite(B) && std::isfinite(rho) && std::isfinite(m)))
            throw usage_error("ModelParams: non-finite parameter");
        if (!(A > std::abs(B))) {
            char buf[96];
            std::snprintf(buf, sizeof buf,
                          "ModelParams: A > |B| violated (A = %g, B = %g)", A, B);
            throw usage_error(buf);
        }
        if (!(rho > 0.0))
            throw usage_error("ModelParams: rho must be positive");
        if (!(m >= 0.0))
            throw usage_error("ModelParams: m must be nonnegative");
    }
};

struct Frequencies {
    double omega_in;    // sqrt(k^2 + m^2 (A - B))
    double omega_out;   // sqrt(k^2 + m^2 (A + B))
    double omega_plus;  // (omega_out + omega_in) / 2
    double omega_minus; // (omega_out - omega_in) / 2
};

inline double conformal_scale(const ModelParams& p, double eta) {
    return p.A + p.B * std::tanh(p.rho * eta);
}

inline Frequencies frequencies(const ModelParams& p, double k) {
    p.validate();
    if (k == 0.0 && p.m == 0.0)
        throw usage_error("frequencies: degenerate mode k = m = 0 (zero frequency)");
    Frequencies f;
    f.omega_in = std::sqrt(k * k + p.m * p.m * (p.A - p.B));
    f.omega_out = std::sqrt(k * k + p.m * p.m * (p.A + p.B));
    f.omega_plus = 0.5 * (f.omega_out + f.omega_in);
    f.omega_minus = 0.5 * (f.omega_out - f.omega_in);
    return f;
}

// physical frequency at conformal time eta, omega^2 = k^2 + m^2 C(eta)
inline double mode_frequency(const ModelParams& p, double k, double eta) {
    return std::sqrt(k * k + p.m * p.m * conformal_scale(p, eta));
}

// t(eta) - t(eta_ref) = integral of sqrt(C); the integration constant is
// the caller's via eta_ref.
inline double eta_to_cosmic_time(const ModelParams& p, double eta, double eta_ref) {
    p.validate();
    if (!(std::isfinite(eta) && std::isfinite(eta_ref)))
        throw usage_error("eta_to_cosmic_time: non-finite time");
    return integrate([&p](double e) { return std::sqrt(conformal_scale(p, e)); },
                     eta_ref, eta, 1e-11);
}

} // namespace postselect
