#include "qarrival/grid_state.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "qarrival/fft.hpp"

namespace qarrival::states {

namespace {
constexpr double kPi = 3.14159265358979323846;

double momentum_of_bin(std::size_t l, std::size_t n, double dx) {
    const auto half = n / 2;
    const double k = (l < half) ? static_cast<double>(l)
                                : static_cast<double>(l) - static_cast<double>(n);
    return 2.0 * kPi * k / (dx * static_cast<double>(n));
}
} // namespace

GridSpec GridSpec::symmetric(double half_width, std::size_t n_points) {
    if (!num::is_power_of_two(n_points))
        throw std::invalid_argument("GridSpec: n must be a power of two");
    GridSpec s;
    s.n = n_points;
    s.dx = 2.0 * half_width / static_cast<double>(n_points);
    s.x_min = -half_width + 0.5 * s.dx; // cell-centered, origin between samples
    return s;
}

GridWaveFunction to_grid(const WavepacketState& s, const GridSpec& spec) {
    GridWaveFunction g;
    g.spec = spec;
    g.amp.resize(spec.n);
    std::vector<QuadraticWave> waves;
    waves.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) waves.push_back(s.wave(i));
    for (std::size_t j = 0; j < spec.n; ++j) {
        const double x = spec.x(j);
        Complex v(0.0, 0.0);
        for (std::size_t i = 0; i < s.size(); ++i) v += s.coeff[i] * waves[i].value(x);
        g.amp[j] = v;
    }
    const double edge = std::max(std::abs(g.amp.front()), std::abs(g.amp.back()));
    if (edge > 1e-6)
        throw SupportError("to_grid: state amplitude at grid edge is " + std::to_string(edge));
    const double n2 = norm_squared(g);
    if (std::abs(n2 - 1.0) > 1e-6)
        throw SupportError("to_grid: sampled norm deviates by " + std::to_string(n2 - 1.0));
    return g;
}

GridSpec auto_grid(const WavepacketState& s, double t_extra, std::size_t min_points,
                   double pad_sigmas) {
    double reach = 0.0;
    double min_sigma = 1e300;
    for (const auto& p : s.packets) {
        for (double t : {s.time, s.time + t_extra}) {
            reach = std::max(reach, std::abs(p.center_at(t)) + pad_sigmas * p.width_at(t));
        }
        min_sigma = std::min(min_sigma, p.sigma);
    }
    // resolve the narrowest feature and the fastest momentum
    double p_max = 0.0;
    for (const auto& p : s.packets)
        p_max = std::max(p_max, std::abs(p.p0) + 8.0 / (2.0 * p.sigma));
    std::size_t n = min_points;
    auto fine_enough = [&](std::size_t nn) {
        const double dx = 2.0 * reach / static_cast<double>(nn);
        return dx < min_sigma / 8.0 && kPi / dx > 1.5 * p_max;
    };
    while (!fine_enough(n) && n < (std::size_t{1} << 24)) n <<= 1;
    return GridSpec::symmetric(reach, n);
}

void evolve_free_in_place(GridWaveFunction& g, double t) {
    if (t == 0.0) return;
    num::fft(g.amp);
    const std::size_t n = g.amp.size();
    for (std::size_t l = 0; l < n; ++l) {
        const double k = momentum_of_bin(l, n, g.spec.dx);
        const double phase = -0.5 * k * k * t;
        g.amp[l] *= Complex(std::cos(phase), std::sin(phase));
    }
    num::ifft(g.amp);
}

GridWaveFunction evolved(const GridWaveFunction& g, double t) {
    GridWaveFunction out = g;
    evolve_free_in_place(out, t);
    return out;
}

void apply_theta(GridWaveFunction& g, int side) {
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.spec.x(j);
        if (x == 0.0) g.amp[j] *= 0.5;
        else if ((side > 0) != (x > 0.0)) g.amp[j] = Complex(0.0, 0.0);
    }
}

void apply_sign(GridWaveFunction& g) {
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.spec.x(j);
        if (x == 0.0) g.amp[j] = Complex(0.0, 0.0);
        else if (x < 0.0) g.amp[j] = -g.amp[j];
    }
}

Complex inner(const GridWaveFunction& a, const GridWaveFunction& b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner: size mismatch");
    Complex s(0.0, 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a.amp[j]) * b.amp[j];
    return s * a.spec.dx;
}

double norm_squared(const GridWaveFunction& g) {
    double s = 0.0;
    for (const auto& v : g.amp) s += std::norm(v);
    return s * g.spec.dx;
}

double prob_negative_axis(const GridWaveFunction& g) {
    double s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.spec.x(j);
        const double w = (x == 0.0) ? 0.5 : (x < 0.0 ? 1.0 : 0.0);
        s += w * std::norm(g.amp[j]);
    }
    return s * g.spec.dx;
}

double prob_positive_axis(const GridWaveFunction& g) {
    double s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.spec.x(j);
        const double w = (x == 0.0) ? 0.5 : (x > 0.0 ? 1.0 : 0.0);
        s += w * std::norm(g.amp[j]);
    }
    return s * g.spec.dx;
}

double current_at_origin(const GridWaveFunction& g) {
    auto spec = g.amp;
    num::fft(spec);
    const std::size_t n = spec.size();
    for (std::size_t l = 0; l < n; ++l)
        spec[l] *= Complex(0.0, momentum_of_bin(l, n, g.spec.dx));
    num::ifft(spec);
    // 4-point Lagrange interpolation across the cell straddling x = 0
    const double f = (0.0 - g.spec.x_min) / g.spec.dx;
    const auto j0 = static_cast<std::size_t>(f);
    const double u = f - static_cast<double>(j0); // in [0,1)
    const double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    auto interp = [&](const std::vector<Complex>& v) {
        return w0 * v[j0 - 1] + w1 * v[j0] + w2 * v[j0 + 1] + w3 * v[j0 + 2];
    };
    return (std::conj(interp(g.amp)) * interp(spec)).imag();
}

MomentumWaveFunction to_momentum(const GridWaveFunction& g) {
    auto v = g.amp;
    num::fft(v);
    const std::size_t n = v.size();
    MomentumWaveFunction m;
    m.dp = 2.0 * kPi / (g.spec.dx * static_cast<double>(n));
    m.p_min = -m.dp * static_cast<double>(n / 2);
    m.amp.resize(n);
    const double scale = g.spec.dx / std::sqrt(2.0 * kPi);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t l = (j + n / 2) % n; // fftshift
        const double p = m.p(j);
        // continuum convention: psi~(p) = (1/sqrt(2pi)) int psi e^{-ipx} dx
        const Complex ph(std::cos(p * g.spec.x_min), -std::sin(p * g.spec.x_min));
        m.amp[j] = scale * ph * v[l];
    }
    return m;
}

GridWaveFunction from_momentum(const MomentumWaveFunction& m, const GridSpec& spec) {
    if (m.amp.size() != spec.n) throw std::invalid_argument("from_momentum: size mismatch");
    GridWaveFunction g;
    g.spec = spec;
    std::vector<Complex> u(spec.n);
    const double scale = m.dp / std::sqrt(2.0 * kPi);
    for (std::size_t j = 0; j < spec.n; ++j) {
        const std::size_t l = (j + spec.n / 2) % spec.n; // ascending-p index -> fft bin
        const double p = m.p(j);
        const Complex ph(std::cos(p * spec.x_min), std::sin(p * spec.x_min));
        u[l] = scale * ph * m.amp[j];
    }
    num::ifft(u);
    const auto n = static_cast<double>(spec.n);
    for (auto& c : u) c *= n;
    g.amp = std::move(u);
    return g;
}

void require_momentum_resolved(const GridWaveFunction& g) {
    auto v = g.amp;
    num::fft(v);
    const std::size_t n = v.size();
    double total = 0.0, tail = 0.0;
    const double k_nyq = kPi / g.spec.dx;
    for (std::size_t l = 0; l < n; ++l) {
        const double e = std::norm(v[l]);
        total += e;
        if (std::abs(momentum_of_bin(l, n, g.spec.dx)) > 0.9 * k_nyq) tail += e;
    }
    if (tail > 1e-8 * total)
        throw ResolutionError("grid cannot resolve the state's momentum content");
}

void write_grid_csv(const GridWaveFunction& g, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + path);
    std::fprintf(f, "x,re_psi,im_psi\n");
    for (std::size_t j = 0; j < g.size(); ++j)
        std::fprintf(f, "%.12g,%.12g,%.12g\n", g.spec.x(j), g.amp[j].real(), g.amp[j].imag());
    std::fclose(f);
}

} // namespace qarrival::states
