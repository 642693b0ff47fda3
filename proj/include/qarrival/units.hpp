#pragma once

namespace qarrival {

/// Internal computations use hbar = 1, m = 1. A UnitSystem records the
/// caller's scales so boundary values can be converted in and out.
/// With length unit l0 implied by sigma-like inputs, times scale as
/// m l0^2 / hbar and momenta as hbar / l0.
struct UnitSystem {
    double hbar = 1.0;
    double mass = 1.0;
    double length = 1.0;

    double time_unit() const { return mass * length * length / hbar; }
    double momentum_unit() const { return hbar / length; }

    double time_in(double t_external) const { return t_external / time_unit(); }
    double time_out(double t_internal) const { return t_internal * time_unit(); }
    double length_in(double x_external) const { return x_external / length; }
    double length_out(double x_internal) const { return x_internal * length; }
    double momentum_in(double p_external) const { return p_external / momentum_unit(); }
    double momentum_out(double p_internal) const { return p_internal * momentum_unit(); }
};

} // namespace qarrival
