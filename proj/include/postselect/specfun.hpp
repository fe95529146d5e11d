#pragma once

// Complex-argument special functions: principal-branch log-Gamma and the
// Gauss hypergeometric function 2F1 for real argument z in [0,1).
//
// The parameter family of interest has a = 1 + i q, b = i q, c = 1 -+ i p
// with real p, q (so c - a - b is purely imaginary and never an integer);
// accuracy is tuned for |p|, |q| <= 20.

#include <cstdio>
#include <limits>

#include "postselect/common.hpp"

namespace postselect {

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients. Relative accuracy of
// exp(ln_gamma) is ~1e-13 over the right half plane.
inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_coeff[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline bool near_nonpositive_integer(Complex z, double tol = 1e-13) {
    if (std::abs(z.imag()) > tol) return false;
    const double r = z.real();
    return r < 0.5 && std::abs(r - std::round(r)) <= tol;
}

inline Complex ln_gamma_lanczos(Complex z) {
    // valid for Re(z) >= 0.5
    Complex acc(lanczos_coeff[0], 0.0);
    for (int i = 1; i < 9; ++i)
        acc += lanczos_coeff[i] / (z - 1.0 + static_cast<double>(i));
    const Complex t = z + (lanczos_g - 0.5);
    return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(t) - t + std::log(acc);
}

} // namespace detail

// Principal-branch log-Gamma. exp(ln_gamma(z)) = Gamma(z) to ~1e-13
// relative for |z| <= 50. Poles (nonpositive integers) raise domain_error.
inline Complex ln_gamma(Complex z) {
    if (!is_finite(z))
        throw domain_error("ln_gamma: non-finite argument");
    if (detail::near_nonpositive_integer(z)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "ln_gamma: pole at z = %g", std::round(z.real()));
        throw domain_error(buf);
    }
    if (z.real() >= 0.5)
        return detail::ln_gamma_lanczos(z);
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(pi) - std::log(std::sin(pi * z)) - detail::ln_gamma_lanczos(1.0 - z);
}

inline Complex gamma(Complex z) { return std::exp(ln_gamma(z)); }

namespace detail {

// Gamma(n1) Gamma(n2) / (Gamma(d1) Gamma(d2)) via log space.
// A pole in a denominator makes the quotient zero; a pole in a
// numerator is a genuine divergence.
inline Complex gamma_quotient(Complex n1, Complex n2, Complex d1, Complex d2) {
    if (near_nonpositive_integer(n1) || near_nonpositive_integer(n2))
        throw domain_error("gamma_quotient: pole in numerator");
    if (near_nonpositive_integer(d1) || near_nonpositive_integer(d2))
        return Complex(0.0, 0.0);
    return std::exp(ln_gamma(n1) + ln_gamma(n2) - ln_gamma(d1) - ln_gamma(d2));
}

// Defining power series of 2F1. Terms are generated and accumulated in
// 80-bit extended precision: the family above produces intermediate terms
// up to ~1e5 that cancel to an O(1) sum, and double accumulation alone
// costs the last digit of the 1e-10 accuracy contract.
inline Complex hyp2f1_series(Complex a, Complex b, Complex c, double z) {
    constexpr int budget = 10000;
    using CL = std::complex<long double>;
    const CL al(a.real(), a.imag()), bl(b.real(), b.imag()), cl(c.real(), c.imag());
    const long double zl = z;
    CL term(1.0L, 0.0L), sum(1.0L, 0.0L);
    for (int n = 0; n < budget; ++n) {
        const long double nl = static_cast<long double>(n);
        term *= (al + nl) * (bl + nl) * zl / ((cl + nl) * (nl + 1.0L));
        sum += term;
        if (std::abs(term) < 1e-16L * std::abs(sum))
            return Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "hyp2f1: series did not converge in %d terms at z = %.3g "
                  "(partial sum %.6g%+.6gi, last term magnitude %.3g)",
                  budget, z, static_cast<double>(sum.real()),
                  static_cast<double>(sum.imag()), static_cast<double>(std::abs(term)));
    throw numerical_error(buf);
}

// Linear transformation z -> 1-z (A&S 15.3.6). Requires c-a-b away from
// the integers; in the mode-function family c-a-b = -+ i omega/rho, so the
// logarithmic limiting case cannot legitimately arise.
inline Complex hyp2f1_transform(Complex a, Complex b, Complex c, double z) {
    const Complex cab = c - a - b;
    if (std::abs(cab.imag()) < 1e-8 &&
        std::abs(cab.real() - std::round(cab.real())) < 1e-8)
        throw domain_error("hyp2f1: c-a-b within 1e-8 of an integer "
                           "(logarithmic case not supported)");
    const double w = 1.0 - z;
    const Complex g1 = gamma_quotient(c, cab, c - a, c - b);
    const Complex g2 = gamma_quotient(c, -cab, a, b);
    Complex result = g1 * hyp2f1_series(a, b, a + b - c + 1.0, w);
    if (g2 != Complex(0.0, 0.0))
        result += std::exp(cab * std::log(Complex(w, 0.0))) * g2 *
                  hyp2f1_series(c - a, c - b, cab + 1.0, w);
    return result;
}

} // namespace detail

// Gauss hypergeometric 2F1(a,b;c;z), z in [0,1). Power series for
// z <= 1/2, the 1-z linear transformation beyond.
inline Complex hyp2f1(Complex a, Complex b, Complex c, double z) {
    if (!(z >= 0.0 && z < 1.0))
        throw usage_error("hyp2f1: argument z must lie in [0, 1)");
    if (!is_finite(a) || !is_finite(b) || !is_finite(c))
        throw usage_error("hyp2f1: non-finite parameter");
    if (detail::near_nonpositive_integer(c))
        throw usage_error("hyp2f1: c is a nonpositive integer");
    if (z == 0.0)
        return Complex(1.0, 0.0);
    // polynomial cases terminate; the series handles them at any z
    if (detail::near_nonpositive_integer(a) || detail::near_nonpositive_integer(b))
        return detail::hyp2f1_series(a, b, c, z);
    if (z <= 0.5)
        return detail::hyp2f1_series(a, b, c, z);
    return detail::hyp2f1_transform(a, b, c, z);
}

} // namespace postselect
