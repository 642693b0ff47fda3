#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qarrival::num {

using Complex = std::complex<double>;

/// Nodes and positive weights of a quadrature rule on [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = -1.0;
    double b = 1.0;
};

/// n-point Gauss-Legendre rule on [-1, 1], Newton iteration on the
/// Legendre recurrence. Exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(int n);

/// Affine map of a rule to [a, b].
QuadratureRule mapped(const QuadratureRule& rule, double a, double b);

/// Raised when the adaptive integrator exhausts its evaluation budget.
/// Carries the best estimate obtained so far.
struct ConvergenceError : std::runtime_error {
    std::complex<double> best_estimate;
    double error_estimate;
    ConvergenceError(const char* what, std::complex<double> best, double err)
        : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
};

struct IntegrationResult {
    std::complex<double> value;
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7,15) bisection on [a, b]; a and b may be
/// +-infinity (mapped through rational substitutions). Throws
/// ConvergenceError when max_evaluations is exceeded before the
/// tolerance is met.
IntegrationResult integrate(const std::function<std::complex<double>(double)>& f,
                            double a, double b, double tol,
                            long max_evaluations = 2'000'000);

/// Same integrator restricted to a pre-supplied panel decomposition;
/// callers with oscillatory integrands split at known phase marks.
IntegrationResult integrate_panels(const std::function<std::complex<double>(double)>& f,
                                   const std::vector<double>& breakpoints, double tol,
                                   long max_evaluations = 4'000'000);

inline double infinity() { return std::numeric_limits<double>::infinity(); }

} // namespace qarrival::num
