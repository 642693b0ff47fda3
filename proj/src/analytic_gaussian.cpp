#include "qarrival/analytic_gaussian.hpp"

#include <cmath>
#include <stdexcept>

#include "qarrival/special_functions.hpp"

namespace qarrival::analytic {

namespace {
constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

// e^{-y^2} and e^{-y^2} erfi(y), the stable pair for any y
struct ScaledErfi {
    double gauss;  // e^{-y^2}
    double scaled; // e^{-y^2} erfi(y) = Im w(y)
};

ScaledErfi scaled_erfi(double y) {
    const Complex w = num::faddeeva_w(Complex(y, 0.0));
    return {w.real(), w.imag()};
}
} // namespace

TwoGaussianConfig TwoGaussianConfig::from_y(double y, double p0, double sigma, double phi,
                                            double theta) {
    const double rest = y * y - 2.0 * p0 * p0 * sigma * sigma;
    if (!(rest > 0.0))
        throw std::invalid_argument("TwoGaussianConfig::from_y: y too small for this p0 sigma");
    TwoGaussianConfig c;
    c.sigma = sigma;
    c.p0 = p0;
    c.L = sigma * std::sqrt(2.0 * rest);
    c.phi = phi;
    c.theta = theta;
    return c;
}

WavepacketState TwoGaussianConfig::state() const {
    return WavepacketState::superposition(
        {std::polar(std::cos(phi), theta), Complex(std::sin(phi), 0.0)},
        {states::GaussianPacket{+L, sigma, -p0, 0.0},
         states::GaussianPacket{-L, sigma, +p0, 0.0}});
}

TwoTimeTable two_gaussian_q(const TwoGaussianConfig& c) {
    const auto se = scaled_erfi(c.y());
    TwoTimeTable t;
    t.kind = twotime::TableKind::quasi;
    t.t1 = 0.0;
    t.t2 = c.tau();
    const double cp2 = std::cos(c.phi) * std::cos(c.phi);
    const double s2p = std::sin(2.0 * c.phi);
    for (int s2 : {-1, +1}) {
        const double f = se.gauss * std::cos(c.theta) + s2 * std::sin(c.theta) * se.scaled;
        t.at(+1, s2) = 0.5 * cp2 + 0.25 * s2p * f;
        t.at(-1, s2) = 0.5 * (1.0 - cp2) + 0.25 * s2p * f;
    }
    return t;
}

double q_min_of_y(double y) {
    const auto se = scaled_erfi(y);
    return 0.25 * (1.0 - std::sqrt(1.0 + se.gauss * se.gauss + se.scaled * se.scaled));
}

std::pair<double, double> optimal_angles(double y) {
    const auto se = scaled_erfi(y);
    // theta turning f_+ to -f_m, then phi aligning the (-,+) entry
    const double theta = kPi + std::atan2(se.scaled, se.gauss);
    const double fm = std::sqrt(se.gauss * se.gauss + se.scaled * se.scaled);
    const double phi = 0.5 * std::atan(fm);
    return {phi, theta};
}

double truncation_error_bound(double L, double sigma) {
    if (!(L > 0.0) || !(sigma > 0.0))
        throw std::invalid_argument("truncation_error_bound: L, sigma must be > 0");
    return 0.25 * std::erfc(L / (std::sqrt(2.0) * sigma));
}

double single_gaussian_kernel(double p, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("single_gaussian_kernel: tau must be > 0");
    const Complex sqrt_i = std::exp(kI * (kPi / 4.0));
    const Complex z = -p * sqrt_i * std::sqrt(tau / 2.0);
    const Complex term1 = 0.5 * p * num::erfc(z);
    const Complex term2 =
        std::exp(-kI * p * p * tau / 2.0) / std::sqrt(2.0 * kPi * tau) / sqrt_i;
    return tau * (term1 + term2).real();
}

double energy_time(double p) {
    if (p == 0.0) throw std::invalid_argument("energy_time: p must be nonzero");
    return 2.0 / (p * p);
}

ShortTimeResult short_time_expansion(const WavepacketState& s, double tau) {
    ShortTimeResult r;
    double sig_min = 1e300;
    for (const auto& p : s.packets) sig_min = std::min(sig_min, p.sigma);
    r.outside_validity = !(tau < 0.1 * sig_min * sig_min);
    const Complex v = s.value(0.0);
    const Complex d1 = s.d1(0.0);
    const Complex d2 = s.d2(0.0);
    const double current = (std::conj(v) * d1).imag();
    const Complex sqrt_i_half = std::exp(kI * (kPi / 4.0)) / std::sqrt(2.0);
    const double cubic =
        (std::norm(d1) - 2.0 * (sqrt_i_half * v * std::conj(d2)).real()) /
        (6.0 * std::sqrt(kPi));
    r.value = 0.5 * current * tau + cubic * std::pow(tau, 1.5);
    return r;
}

} // namespace qarrival::analytic
