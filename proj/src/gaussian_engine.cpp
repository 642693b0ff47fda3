#include "qarrival/gaussian_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qarrival/quadrature.hpp"
#include "qarrival/special_functions.hpp"

namespace qarrival::twotime {

namespace {
constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
} // namespace

Complex ChoppedEvolvedWave::value(double x) const {
    const Complex arg = (side > 0 ? -kI : kI) * (beta0 + beta1 * x) * inv_two_sqrt_a;
    return prefactor * std::exp(quad_phase * x * x) * num::faddeeva_w(arg);
}

ChoppedEvolvedWave chop_and_evolve(const QuadraticWave& phi_t1, int side, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("chop_and_evolve: tau must be > 0");
    ChoppedEvolvedWave c;
    const Complex a = -(phi_t1.a2 + kI / (2.0 * tau));
    const Complex sqrt_a = std::sqrt(a);
    // sqrt(1/(2 pi i tau)) = exp(-i pi/4)/sqrt(2 pi tau)
    const Complex root = std::exp(Complex(0.0, -kPi / 4.0)) / std::sqrt(2.0 * kPi * tau);
    c.prefactor = root * 0.5 * std::sqrt(kPi) / sqrt_a * std::exp(phi_t1.a0);
    c.quad_phase = kI / (2.0 * tau);
    c.beta0 = phi_t1.a1;
    c.beta1 = -kI / tau;
    c.inv_two_sqrt_a = 1.0 / (2.0 * sqrt_a);
    c.side = side;
    return c;
}

namespace {

// Phase-aware panels on [lo, hi] for integrands oscillating like
// exp(i x^2 / (2 tau) + i pbar x). One oscillation period per GK15
// panel: on uniformly oscillatory integrands the embedded error
// estimate is only trustworthy when the panel resolves the oscillation.
std::vector<double> phase_panels(double lo, double hi, double tau, double pbar) {
    std::vector<double> cuts{lo};
    const double dphi = 6.0;
    const double span = hi - lo;
    double x = lo;
    while (x < hi) {
        const double rate = std::abs(x) / tau + pbar + 1e-12;
        double step = dphi / rate;
        step = std::min(step, span / 8.0);
        step = std::max(step, span * 1e-7);
        x = std::min(hi, x + step);
        cuts.push_back(x);
    }
    return cuts;
}

// |x| range outside which every listed envelope is below exp(-drop) of
// its peak; empty (lo > hi) when nothing reaches the requested side.
struct Support {
    double lo = 0.0, hi = 0.0;
    bool empty = true;
};

Support envelope_support(const std::vector<QuadraticWave>& waves, int side, double drop = 46.0) {
    Support s;
    for (const auto& w : waves) {
        const double a = w.a2.real(); // < 0
        const double b = w.a1.real();
        const double xc = -b / (2.0 * a);
        const double half = std::sqrt(drop / (-a));
        const double lo = xc - half, hi = xc + half;
        if (s.empty) {
            s = {lo, hi, false};
        } else {
            s.lo = std::min(s.lo, lo);
            s.hi = std::max(s.hi, hi);
        }
    }
    if (side > 0) s.lo = std::max(s.lo, 0.0);
    else s.hi = std::min(s.hi, 0.0);
    if (s.lo >= s.hi) s.empty = true;
    return s;
}

} // namespace

GaussianEngine::GaussianEngine(const WavepacketState& s, double t1, double t2, double tol)
    : n_(s.size()), t1_(t1), t2_(t2), coeff_(s.coeff) {
    if (!(t2 > t1) || t1 < 0.0) throw std::invalid_argument("GaussianEngine: need t2 > t1 >= 0");
    const double tau = t2 - t1;
    // the state carries its own time offset; evaluate at absolute t1/t2
    for (std::size_t i = 0; i < n_; ++i)
        wave_t1_.push_back(states::packet_wave(s.packets[i], s.time + t1));
    for (std::size_t i = 0; i < n_; ++i)
        wave_t2_.push_back(states::packet_wave(s.packets[i], s.time + t2));

    std::vector<ChoppedEvolvedWave> chi[2];
    for (int side : {-1, +1})
        for (std::size_t j = 0; j < n_; ++j)
            chi[sidx(side)].push_back(chop_and_evolve(wave_t1_[j], side, tau));

    double pbar = 0.0;
    for (const auto& p : s.packets) pbar = std::max(pbar, std::abs(p.p0) + 4.0 / p.sigma);

    for (auto& row : T_)
        for (auto& cell : row) cell.assign(n_ * n_, Complex(0, 0));
    for (auto& a : U_)
        for (auto& b : a)
            for (auto& cell : b) cell.assign(n_ * n_, Complex(0, 0));

    for (int s2 : {-1, +1}) {
        // q tensors: the bra is Gaussian at t2, so the integrand dies at
        // its envelope edge; inside, one oscillation per panel
        const auto supp = envelope_support(wave_t2_, s2);
        std::vector<double> tcuts;
        if (!supp.empty) tcuts = phase_panels(supp.lo, supp.hi, tau, pbar);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (int s1 : {-1, +1})
                    if (!supp.empty) {
                        auto f = [&, i, j, s1](double x) {
                            return std::conj(wave_t2_[i].value(x)) *
                                   chi[sidx(s1)][j].value(x);
                        };
                        T_[sidx(s1)][sidx(s2)][i * n_ + j] =
                            num::integrate_panels(f, tcuts, tol).value;
                    }

        // p12 / decoherence tensors: the quadratic phases of bra and ket
        // cancel, but |chi|^2 only decays like 1/x^2, so the half line
        // is integrated in full: a paneled core plus a mapped tail
        const double core = supp.empty ? 30.0 : std::max(std::abs(supp.lo), std::abs(supp.hi));
        std::vector<double> ucuts;
        const int ncore = 48;
        for (int k = 0; k <= ncore; ++k)
            ucuts.push_back((s2 > 0 ? 1.0 : -1.0) * core * k / ncore);
        std::sort(ucuts.begin(), ucuts.end());
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (int a : {-1, +1})
                    for (int b : {-1, +1}) {
                        auto g = [&, i, j, a, b](double x) {
                            return std::conj(chi[sidx(a)][i].value(x)) *
                                   chi[sidx(b)][j].value(x);
                        };
                        Complex v = num::integrate_panels(g, ucuts, tol).value;
                        if (s2 > 0)
                            v += num::integrate(g, core, num::infinity(), tol).value;
                        else
                            v += num::integrate(g, -num::infinity(), -core, tol).value;
                        U_[sidx(a)][sidx(b)][sidx(s2)][i * n_ + j] = v;
                    }
    }

    gram_.assign(n_ * n_, Complex(0, 0));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            gram_[i * n_ + j] = states::overlap(wave_t1_[i], wave_t1_[j]);
}

TwoTimeTable GaussianEngine::quasi() const { return quasi_for_coefficients(coeff_); }

TwoTimeTable GaussianEngine::quasi_for_coefficients(const std::vector<Complex>& c) const {
    TwoTimeTable t;
    t.kind = TableKind::quasi;
    t.t1 = t1_;
    t.t2 = t2_;
    const double n2 = norm_for_coefficients(c);
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1}) {
            Complex v(0, 0);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j)
                    v += std::conj(c[i]) * c[j] * T(s1, s2, i, j);
            t.at(s1, s2) = v.real() / n2;
        }
    return t;
}

double GaussianEngine::norm_for_coefficients(const std::vector<Complex>& c) const {
    Complex v(0, 0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            v += std::conj(c[i]) * c[j] * gram_[i * n_ + j];
    return v.real();
}

TwoTimeTable GaussianEngine::sequential() const {
    TwoTimeTable t;
    t.kind = TableKind::sequential;
    t.t1 = t1_;
    t.t2 = t2_;
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1}) {
            Complex v(0, 0);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j)
                    v += std::conj(coeff_[i]) * coeff_[j] * U(s1, s1, s2, i, j);
            t.at(s1, s2) = v.real();
        }
    return t;
}

Complex GaussianEngine::decoherence(int s1, int s1p, int s2) const {
    Complex v(0, 0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            v += std::conj(coeff_[i]) * coeff_[j] * U(s1p, s1, s2, i, j);
    return v;
}

double GaussianEngine::single_time_prob(int which_time, int s) const {
    const auto& waves = (which_time == 1) ? wave_t1_ : wave_t2_;
    Complex v(0, 0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            v += std::conj(coeff_[i]) * coeff_[j] *
                 states::half_line_overlap(waves[i], waves[j], s);
    return v.real();
}

double GaussianEngine::disturbed_mean() const {
    const auto p12 = sequential();
    double m = 0.0;
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1}) m += s2 * p12.at(s1, s2);
    return m;
}

} // namespace qarrival::twotime
