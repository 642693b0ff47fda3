#pragma once

#include <utility>

#include "qarrival/gaussian_state.hpp"
#include "qarrival/two_time_table.hpp"

namespace qarrival::analytic {

using states::Complex;
using states::WavepacketState;
using twotime::TwoTimeTable;

/// Two counter-moving packets peaked at +-L with momenta -+p0 that meet
/// at the origin after tau = L/p0 (hbar = m = 1). Coefficients
/// alpha_+ = cos(phi) e^{i theta}, alpha_- = sin(phi) up to a global
/// phase; theta is the relative phase.
///
/// The interference parameter is y = sqrt(2) p0 (Dx)_tau, with
/// (Dx)_tau the spread width at the meeting time, so
/// y^2 = 2 p0^2 sigma^2 + L^2 / (2 sigma^2).
struct TwoGaussianConfig {
    double L = 2.3;
    double sigma = 1.0;
    double p0 = 0.05;
    double phi = 0.0;
    double theta = 0.0;

    double tau() const { return L / p0; }
    double delta_x_tau() const {
        const double t = tau();
        return std::sqrt(sigma * sigma + t * t / (4.0 * sigma * sigma));
    }
    double y() const { return std::sqrt(2.0) * p0 * delta_x_tau(); }

    /// Valid only in the packets-localized regime; below L/sigma = 2.3
    /// the half-percent truncation budget is exceeded.
    bool approximation_valid() const { return L / sigma >= 2.3; }

    /// Geometry for a requested y at fixed sigma and p0 sigma << 1;
    /// requires y^2 > 2 (p0 sigma)^2.
    static TwoGaussianConfig from_y(double y, double p0 = 0.05, double sigma = 1.0,
                                    double phi = 0.0, double theta = 0.0);

    /// The physical superposition (normalized including packet overlap).
    WavepacketState state() const;
};

/// Closed-form quasi-probability of the projected-packet construction:
///   q(+,s) = cos^2(phi)/2 + sin(2 phi) f_s / 4,
///   q(-,s) = sin^2(phi)/2 + sin(2 phi) f_s / 4,
/// with f_s = e^{-y^2} (cos theta + s sin theta erfi(y)).
TwoTimeTable two_gaussian_q(const TwoGaussianConfig& c);

/// min over (phi, theta) of the minimum entry:
///   q_min(y) = (1 - sqrt(1 + e^{-2 y^2} (1 + erfi(y)^2))) / 4.
/// Evaluated through Im w(y) = e^{-y^2} erfi(y), stable for any y >= 0.
double q_min_of_y(double y);

/// Angles realizing q_min_of_y; the minimized entry is (-,+).
std::pair<double, double> optimal_angles(double y);

/// Cauchy-Schwarz bound on the projected-packet truncation:
/// erfc(L / (sqrt(2) sigma)) / 4.
double truncation_error_bound(double L, double sigma);

/// Diagonal momentum kernel of q(-,+) for a state sharply peaked at
/// momentum p (hbar = m = 1):
///   f(p, tau) = tau Re[ (p/2) erfc(-p sqrt(i tau/2))
///                      + e^{-i p^2 tau/2} / sqrt(2 pi i tau) ].
/// Tends to p tau for large positive p; goes negative for small
/// negative p on the energy-time scale tau_E.
double single_gaussian_kernel(double p, double tau);

/// tau_E = hbar / E = 2 / p^2 in natural units.
double energy_time(double p);

struct ShortTimeResult {
    double value = 0.0;
    bool outside_validity = false;
};

/// Small-tau form of q(-,+):
///   J(0,0) tau / 2
///   + tau^{3/2} / (6 sqrt(pi)) (|psi'(0)|^2 - 2 Re[sqrt(i/2) psi(0) conj(psi''(0))])
/// with the principal branch sqrt(i/2) = e^{i pi/4}/sqrt(2). Flagged
/// when tau exceeds a tenth of the narrowest packet's dispersion time.
ShortTimeResult short_time_expansion(const WavepacketState& s, double tau);

} // namespace qarrival::analytic
