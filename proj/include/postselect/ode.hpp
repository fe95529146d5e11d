#pragma once

// Embedded Dormand-Prince 5(4) integrator for small complex systems,
// with step clipping onto requested output points.

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <span>
#include <vector>

#include "postselect/common.hpp"

namespace postselect {

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    std::size_t max_steps = 20'000'000;
};

namespace detail {

template <std::size_t N>
using OdeState = std::array<Complex, N>;

template <std::size_t N>
double inf_norm(const OdeState<N>& y) {
    double n = 0.0;
    for (const auto& v : y) n = std::max(n, std::abs(v));
    return n;
}

} // namespace detail

// Integrates y' = f(t, y) from ts.front() to ts.back(), landing exactly on
// every entry of ts; `emit(i, t, y)` is called once per output point
// (including the initial one). f has signature OdeState<N> f(double, const OdeState<N>&).
template <std::size_t N, class F, class Emit>
void integrate_ode(const F& f, std::span<const double> ts,
                   detail::OdeState<N> y, const OdeOptions& opt, Emit&& emit) {
    using State = detail::OdeState<N>;
    if (ts.size() < 2)
        throw usage_error("integrate_ode: need at least two output points");
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1]))
            throw usage_error("integrate_ode: output points must increase strictly");
    if (!(opt.rtol > 0.0) || !(opt.atol >= 0.0))
        throw usage_error("integrate_ode: tolerances must be positive");

    // Dormand-Prince coefficients
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b(5th) - b(4th), for the embedded error estimate
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double t = ts.front();
    emit(std::size_t{0}, t, y);
    State k1 = f(t, y);

    const double span = ts.back() - ts.front();
    double h = span * 1e-4;
    {
        const double dn = detail::inf_norm(k1);
        if (dn > 0.0) h = std::min(h, 0.01 * std::max(detail::inf_norm(y), opt.atol) / dn);
    }

    std::size_t next = 1;
    std::size_t steps = 0;
    auto axpy = [](State& acc, double w, const State& v) {
        for (std::size_t i = 0; i < N; ++i) acc[i] += w * v[i];
    };

    while (next < ts.size()) {
        if (++steps > opt.max_steps)
            throw numerical_error("integrate_ode: step budget exhausted");
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            char buf[96];
            std::snprintf(buf, sizeof buf,
                          "integrate_ode: step size underflow at t = %.12g", t);
            throw numerical_error(buf);
        }
        double hs = h;
        bool clipped = false;
        if (t + hs >= ts[next]) {
            hs = ts[next] - t;
            clipped = true;
        }

        State y2 = y; axpy(y2, hs * a21, k1);
        State k2 = f(t + c2 * hs, y2);
        State y3 = y; axpy(y3, hs * a31, k1); axpy(y3, hs * a32, k2);
        State k3 = f(t + c3 * hs, y3);
        State y4 = y; axpy(y4, hs * a41, k1); axpy(y4, hs * a42, k2); axpy(y4, hs * a43, k3);
        State k4 = f(t + c4 * hs, y4);
        State y5 = y; axpy(y5, hs * a51, k1); axpy(y5, hs * a52, k2); axpy(y5, hs * a53, k3);
        axpy(y5, hs * a54, k4);
        State k5 = f(t + c5 * hs, y5);
        State y6 = y; axpy(y6, hs * a61, k1); axpy(y6, hs * a62, k2); axpy(y6, hs * a63, k3);
        axpy(y6, hs * a64, k4); axpy(y6, hs * a65, k5);
        State k6 = f(t + hs, y6);
        State ynew = y; axpy(ynew, hs * b1, k1); axpy(ynew, hs * b3, k3); axpy(ynew, hs * b4, k4);
        axpy(ynew, hs * b5, k5); axpy(ynew, hs * b6, k6);
        State k7 = f(t + hs, ynew); // FSAL

        State errv{};
        axpy(errv, hs * e1, k1); axpy(errv, hs * e3, k3); axpy(errv, hs * e4, k4);
        axpy(errv, hs * e5, k5); axpy(errv, hs * e6, k6); axpy(errv, hs * e7, k7);
        const double scale =
            opt.atol + opt.rtol * std::max(detail::inf_norm(y), detail::inf_norm(ynew));
        const double err = detail::inf_norm(errv) / scale;

        const double factor = (err > 0.0)
            ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
        if (err <= 1.0) {
            t += hs;
            y = ynew;
            k1 = k7;
            if (clipped) {
                t = ts[next]; // exact landing
                emit(next, t, y);
                ++next;
            }
            // a clipped landing step must not shrink the nominal proposal
            h = clipped ? std::max(h, hs * factor) : hs * factor;
        } else {
            h = hs * factor;
        }
    }
}

} // namespace postselect
