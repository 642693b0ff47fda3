#pragma once

#include <complex>
#include <vector>

namespace qarrival::states {

using Complex = std::complex<double>;

/// Gaussian wavepacket parameters at t = 0:
///   psi(x) = (2 pi sigma^2)^{-1/4} exp(-(x-x0)^2/(4 sigma^2)
///            + i p0 (x - x0) + i phase)
/// hbar = m = 1 throughout.
struct GaussianPacket {
    double x0 = 0.0;
    double sigma = 1.0;
    double p0 = 0.0;
    double phase = 0.0;

    double center_at(double t) const { return x0 + p0 * t; }
    double width_at(double t) const {
        const double s = t / (2.0 * sigma);
        return std::sqrt(sigma * sigma + s * s);
    }
};

/// A wave of the form exp(a2 x^2 + a1 x + a0); free evolution maps
/// Gaussians to this family exactly.
struct QuadraticWave {
    Complex a2, a1, a0;

    Complex value(double x) const { return std::exp((a2 * x + a1) * x + a0); }
    Complex d1(double x) const { return (2.0 * a2 * x + a1) * value(x); }
    Complex d2(double x) const {
        const Complex g = 2.0 * a2 * x + a1;
        return (g * g + 2.0 * a2) * value(x);
    }
};

/// Exact free-particle evolution of a packet to time t.
QuadraticWave packet_wave(const GaussianPacket& p, double t);

/// Momentum representation of the same packet, also exp-quadratic in p.
QuadraticWave packet_wave_momentum(const GaussianPacket& p, double t);

/// Normalized superposition sum_i c_i |packet_i>, plus the global time
/// already applied by evolve_free. Immutable by convention.
struct WavepacketState {
    std::vector<Complex> coeff;
    std::vector<GaussianPacket> packets;
    double time = 0.0;

    std::size_t size() const { return packets.size(); }

    /// Builds the state and rescales the coefficients so <psi|psi> = 1
    /// including packet overlaps.
    static WavepacketState superposition(std::vector<Complex> c,
                                         std::vector<GaussianPacket> p);

    QuadraticWave wave(std::size_t i, double t_extra = 0.0) const {
        return packet_wave(packets[i], time + t_extra);
    }
    Complex value(double x, double t_extra = 0.0) const;
    Complex d1(double x, double t_extra = 0.0) const;
    Complex d2(double x, double t_extra = 0.0) const;
};

/// t >= 0; returns the state evolved under H = p^2/2.
WavepacketState evolve_free(const WavepacketState& s, double t);

/// Full-line overlap  int conj(bra)(x) ket(x) dx  in closed form.
Complex overlap(const QuadraticWave& bra, const QuadraticWave& ket);

/// Overlap restricted to x > 0 (side = +1) or x < 0 (side = -1),
/// evaluated through the scaled complementary error function.
Complex half_line_overlap(const QuadraticWave& bra, const QuadraticWave& ket, int side);

/// Gaussian integral of exp(A x^2 + B x + C) over a half line.
Complex half_line_gaussian(Complex A, Complex B, Complex C, int side);

double norm_squared(const WavepacketState& s);
Complex overlap_states(const WavepacketState& a, const WavepacketState& b);

/// J(0,t) = Im[psi* psi'](0,t) for the state evolved an extra t.
double current_at_origin(const WavepacketState& s, double t);

/// int_{-inf}^0 |psi(x,t)|^2 dx, closed form.
double prob_negative_axis(const WavepacketState& s, double t);

/// N |psi'(0,t)|^2; the caller supplies the model-dependent scale N.
double kinetic_energy_density_at_origin(const WavepacketState& s, double t,
                                        double normalization = 1.0);

} // namespace qarrival::states
