#include "qarrival/gaussian_state.hpp"

#include <cmath>
#include <stdexcept>

#include "qarrival/special_functions.hpp"

namespace qarrival::states {

namespace {
constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
} // namespace

QuadraticWave packet_wave(const GaussianPacket& p, double t) {
    const double s2 = p.sigma * p.sigma;
    QuadraticWave w0;
    w0.a2 = Complex(-1.0 / (4.0 * s2), 0.0);
    w0.a1 = Complex(p.x0 / (2.0 * s2), p.p0);
    w0.a0 = Complex(-p.x0 * p.x0 / (4.0 * s2) - 0.25 * std::log(2.0 * kPi * s2),
                    p.phase - p.p0 * p.x0);
    if (t == 0.0) return w0;
    // psi_t(x) = (1 - 2 i t a2)^{-1/2} exp(a2' x^2 + a1' x + a0')
    const Complex alpha = w0.a2 + kI / (2.0 * t);
    QuadraticWave wt;
    wt.a2 = kI / (2.0 * t) + 1.0 / (4.0 * alpha * t * t);
    wt.a1 = kI * w0.a1 / (2.0 * alpha * t);
    wt.a0 = w0.a0 - w0.a1 * w0.a1 / (4.0 * alpha) - 0.5 * std::log(1.0 - 2.0 * kI * t * w0.a2);
    return wt;
}

QuadraticWave packet_wave_momentum(const GaussianPacket& p, double t) {
    // tilde psi(q) = (1/sqrt(2 pi)) int psi(x,0) e^{-iqx} dx, then the
    // free phase e^{-i q^2 t/2}
    const QuadraticWave w0 = packet_wave(p, 0.0);
    const Complex a = -w0.a2; // Re a > 0
    QuadraticWave m;
    // (1/sqrt(2pi)) sqrt(pi/a) exp((a1 - i q)^2/(4a) + a0)
    m.a2 = -1.0 / (4.0 * a) - kI * t / 2.0;
    m.a1 = -kI * w0.a1 / (2.0 * a);
    m.a0 = w0.a0 + w0.a1 * w0.a1 / (4.0 * a) + 0.5 * std::log(1.0 / (2.0 * a));
    return m;
}

WavepacketState WavepacketState::superposition(std::vector<Complex> c,
                                               std::vector<GaussianPacket> p) {
    if (c.size() != p.size() || c.empty())
        throw std::invalid_argument("superposition: coefficient/packet mismatch");
    WavepacketState s;
    s.coeff = std::move(c);
    s.packets = std::move(p);
    const double n2 = norm_squared(s);
    if (!(n2 > 0.0)) throw std::invalid_argument("superposition: null state");
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& a : s.coeff) a *= scale;
    return s;
}

Complex WavepacketState::value(double x, double t_extra) const {
    Complex v(0.0, 0.0);
    for (std::size_t i = 0; i < size(); ++i) v += coeff[i] * wave(i, t_extra).value(x);
    return v;
}

Complex WavepacketState::d1(double x, double t_extra) const {
    Complex v(0.0, 0.0);
    for (std::size_t i = 0; i < size(); ++i) v += coeff[i] * wave(i, t_extra).d1(x);
    return v;
}

Complex WavepacketState::d2(double x, double t_extra) const {
    Complex v(0.0, 0.0);
    for (std::size_t i = 0; i < size(); ++i) v += coeff[i] * wave(i, t_extra).d2(x);
    return v;
}

WavepacketState evolve_free(const WavepacketState& s, double t) {
    if (t < 0.0) throw std::invalid_argument("evolve_free: t must be >= 0");
    WavepacketState out = s;
    out.time += t;
    return out;
}

Complex overlap(const QuadraticWave& bra, const QuadraticWave& ket) {
    const Complex A = std::conj(bra.a2) + ket.a2;
    const Complex B = std::conj(bra.a1) + ket.a1;
    const Complex C = std::conj(bra.a0) + ket.a0;
    const Complex a = -A;
    return std::sqrt(kPi / a) * std::exp(B * B / (4.0 * a) + C);
}

Complex half_line_gaussian(Complex A, Complex B, Complex C, int side) {
    // int exp(A x^2 + B x) dx over the half line, expressed through
    // w(z) so the exp(B^2/4a) factor never overflows on its own
    const Complex a = -A;
    const Complex sq = std::sqrt(a); // Re > 0 for physical states
    const Complex arg = (side > 0 ? -kI : kI) * B / (2.0 * sq);
    return 0.5 * std::sqrt(kPi) / sq * num::faddeeva_w(arg) * std::exp(C);
}

Complex half_line_overlap(const QuadraticWave& bra, const QuadraticWave& ket, int side) {
    return half_line_gaussian(std::conj(bra.a2) + ket.a2, std::conj(bra.a1) + ket.a1,
                              std::conj(bra.a0) + ket.a0, side);
}

double norm_squared(const WavepacketState& s) {
    Complex n(0.0, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            n += std::conj(s.coeff[i]) * s.coeff[j] * overlap(s.wave(i), s.wave(j));
    return n.real();
}

Complex overlap_states(const WavepacketState& a, const WavepacketState& b) {
    Complex v(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            v += std::conj(a.coeff[i]) * b.coeff[j] * overlap(a.wave(i), b.wave(j));
    return v;
}

double current_at_origin(const WavepacketState& s, double t) {
    const Complex v = s.value(0.0, t);
    const Complex dv = s.d1(0.0, t);
    return (std::conj(v) * dv).imag();
}

double prob_negative_axis(const WavepacketState& s, double t) {
    Complex p(0.0, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            p += std::conj(s.coeff[i]) * s.coeff[j] *
                 half_line_overlap(s.wave(i, t), s.wave(j, t), -1);
    return p.real();
}

double kinetic_energy_density_at_origin(const WavepacketState& s, double t,
                                        double normalization) {
    return normalization * std::norm(s.d1(0.0, t));
}

} // namespace qarrival::states
