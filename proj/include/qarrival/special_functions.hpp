#pragma once

#include <complex>
#include <stdexcept>

namespace qarrival::num {

using Complex = std::complex<double>;

/// Thrown when an input would overflow the double exponent range.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz), valid on the whole plane.
/// Relative accuracy ~1e-13 on the upper half plane; lower half plane via
/// the reflection w(z) = 2 exp(-z^2) - w(-z), which grows like exp(|z|^2).
Complex faddeeva_w(Complex z);

/// erf(z) for complex z. Precondition |z| < 30 (exp(-z^2) must be
/// representable); violations raise DomainError.
Complex erf(Complex z);

/// erfc(z) = 1 - erf(z), same domain contract as erf.
Complex erfc(Complex z);

/// Scaled complement exp(z^2) erfc(z) = w(iz). Never overflows for
/// Re z >= 0; the workhorse behind half-line Gaussian integrals.
Complex erfc_scaled(Complex z);

/// Imaginary error function erfi(y) = -i erf(iy), real for real y.
/// All-positive power series, no cancellation; |y| <= 27 or so before
/// the result itself overflows.
double erfi(double y);

/// Sine integral Si(u) = int_0^u sin(t)/t dt.
double sine_integral(double u);

} // namespace qarrival::num
