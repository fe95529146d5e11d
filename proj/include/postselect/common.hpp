#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace postselect {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Error taxonomy used across the library. The CLI maps these to exit codes:
// usage_error -> 1, numerical_error / domain_error -> 2, postselection_error -> 3.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// invalid parameters, grids or configuration
struct usage_error : error {
    using error::error;
};

// a numerical procedure failed to converge or lost control of its error
struct numerical_error : error {
    using error::error;
};

// function evaluated at a singular point (e.g. a Gamma pole)
struct domain_error : error {
    using error::error;
};

// pre/post-selected pair with (near-)vanishing overlap: weak value undefined
struct postselection_error : error {
    using error::error;
};

} // namespace postselect
