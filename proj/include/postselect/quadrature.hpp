#pragma once

// Adaptive Gauss-Kronrod (7,15) integration for smooth real integrands.

#include <cstdio>
#include <utility>

#include "postselect/common.hpp"

namespace postselect {
namespace detail {

// QUADPACK dqk15 nodes and weights on [-1, 1]
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double gk_weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double gauss_weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <class F>
std::pair<double, double> gk15(const F& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double kronrod = 0.0, gauss = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double fx = f(mid - h * gk_nodes[i]) + f(mid + h * gk_nodes[i]);
        kronrod += gk_weights[i] * fx;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * fx;
    }
    const double fc = f(mid);
    kronrod += gk_weights[7] * fc;
    gauss += gauss_weights[3] * fc;
    return {kronrod * h, std::abs(kronrod - gauss) * std::abs(h)};
}

template <class F>
double integrate_recurse(const F& f, double a, double b, double tol, int depth) {
    auto [value, err] = gk15(f, a, b);
    if (err <= tol || err <= 1e-16 * std::abs(value))
        return value;
    if (depth >= 60) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "integrate: quadrature did not converge on [%g, %g] "
                      "(error estimate %.3g, tolerance %.3g)", a, b, err, tol);
        throw numerical_error(buf);
    }
    const double mid = 0.5 * (a + b);
    return integrate_recurse(f, a, mid, 0.5 * tol, depth + 1) +
           integrate_recurse(f, mid, b, 0.5 * tol, depth + 1);
}

} // namespace detail

// Integrates f over [a, b] to absolute tolerance abs_tol. Handles b < a
// with the usual sign convention.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-11) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw usage_error("integrate: non-finite interval");
    if (a == b) return 0.0;
    if (b < a) return -integrate(f, b, a, abs_tol);
    return detail::integrate_recurse(f, a, b, abs_tol, 0);
}

} // namespace postselect
