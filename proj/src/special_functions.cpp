#include "qarrival/special_functions.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <vector>

namespace qarrival::num {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kPi = 3.14159265358979323846;

// Weideman rational approximation of w(z) on the upper half plane
// (SIAM J. Numer. Anal. 31 (1994) 1497).  The N Chebyshev-like
// coefficients come from one FFT of function samples; computed once in
// long double at first use.
constexpr int kWeidemanN = 64;

struct WeidemanTable {
    double L = 0.0;
    std::array<double, kWeidemanN> a{};
};

// Radix-2 FFT in long double, only used to bootstrap the table.
void boot_fft(std::vector<std::complex<long double>>& v) {
    const std::size_t n = v.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const long double ang = -2.0L * 3.14159265358979323846264338L / static_cast<long double>(len);
        const std::complex<long double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<long double> w(1.0L, 0.0L);
            for (std::size_t k = 0; k < len / 2; ++k) {
                auto u = v[i + k];
                auto t = v[i + k + len / 2] * w;
                v[i + k] = u + t;
                v[i + k + len / 2] = u - t;
                w *= wl;
            }
        }
    }
}

const WeidemanTable& weideman_table() {
    static WeidemanTable table;
    static std::once_flag flag;
    std::call_once(flag, [] {
        const int N = kWeidemanN;
        const int M = 2 * N;
        const int M2 = 2 * M;
        const long double Ll = std::sqrt(static_cast<long double>(N) / std::sqrt(2.0L));
        std::vector<std::complex<long double>> f(M2, 0.0L);
        // f[0] = 0, then samples at theta_k = k pi / M, k = -M+1 .. M-1
        for (int k = -M + 1; k <= M - 1; ++k) {
            const long double theta = static_cast<long double>(k) * 3.14159265358979323846264338L / M;
            const long double t = Ll * std::tan(theta / 2.0L);
            const long double val = std::exp(-t * t) * (Ll * Ll + t * t);
            f[static_cast<std::size_t>(k + M)] = val;
        }
        // fftshift then FFT; keep real part
        std::vector<std::complex<long double>> g(M2);
        for (int i = 0; i < M2; ++i) g[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>((i + M) % M2)];
        boot_fft(g);
        // a = flipud(real(fft)/M2 entries 2..N+1)
        for (int m = 0; m < N; ++m) {
            table.a[static_cast<std::size_t>(m)] =
                static_cast<double>(g[static_cast<std::size_t>(N - m)].real() / M2);
        }
        table.L = static_cast<double>(Ll);
    });
    return table;
}

// w(z) for Im z >= 0 via the rational series.
Complex faddeeva_upper(Complex z) {
    const auto& tb = weideman_table();
    const Complex iz(-z.imag(), z.real());
    const Complex denom = tb.L - iz;
    const Complex Z = (tb.L + iz) / denom;
    // Horner over a[0] Z^{N-1} + ... + a[N-1]
    Complex p(0.0, 0.0);
    for (int m = 0; m < kWeidemanN; ++m) p = p * Z + tb.a[static_cast<std::size_t>(m)];
    return 2.0 * p / (denom * denom) + (1.0 / kSqrtPi) / denom;
}

// Asymptotic continued fraction, accurate for large |z| in the upper
// half plane. Used past the region where the rational series degrades.
Complex faddeeva_cf(Complex z, int depth = 24) {
    Complex r(0.0, 0.0);
    for (int k = depth; k >= 1; --k) r = (0.5 * k) / (z - r);
    return Complex(0.0, 1.0 / kSqrtPi) / (z - r);
}

Complex exp_msq(Complex z) {
    // exp(-z^2) with an explicit overflow guard
    const Complex z2 = z * z;
    if (-z2.real() > 700.0) throw DomainError("exp(-z^2) overflows");
    return std::exp(-z2);
}

// Maclaurin erf for small |z|; ~1e-16 relative for |z| <= 1.5.
Complex erf_series(Complex z) {
    const Complex z2 = z * z;
    Complex term = z;
    Complex sum = z;
    for (int k = 1; k < 60; ++k) {
        term *= -z2 / static_cast<double>(k);
        const Complex add = term / static_cast<double>(2 * k + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return (2.0 / kSqrtPi) * sum;
}

// --- sine integral pieces -------------------------------------------------

double si_series(double x) {
    // Si Maclaurin, fine to |x| <= 4
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 40; ++k) {
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        const double add = term / (2.0 * k + 1.0);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// E1(ix) by modified Lentz continued fraction; returns Si via
// Si(x) = pi/2 - Im E1(ix), for x > 4.
double si_cf(double x) {
    const Complex z(0.0, x);
    const double tiny = 1e-290;
    Complex b = z + 1.0;
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const Complex del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    // h e^{-ix} = conj(E1(ix)); Si(x) = pi/2 - Im E1(ix) = pi/2 + Im(h e^{-ix})
    const Complex e1c = (std::cos(x) - Complex(0.0, 1.0) * std::sin(x)) * h;
    return kPi / 2.0 + e1c.imag();
}

double si_asymptotic(double x) {
    // f,g auxiliary expansions, optimal truncation far beyond their
    // accuracy floor at x > 1e4
    const double x2 = x * x;
    double f = 1.0, g = 1.0, tf = 1.0, tg = 1.0;
    for (int k = 1; k <= 6; ++k) {
        tf *= -(2.0 * k) * (2.0 * k - 1.0) / x2;
        tg *= -(2.0 * k) * (2.0 * k + 1.0) / x2;
        f += tf;
        g += tg;
    }
    f /= x;
    g /= x2;
    return kPi / 2.0 - f * std::cos(x) - g * std::sin(x);
}

} // namespace

Complex faddeeva_w(Complex z) {
    if (z.imag() >= 0.0) {
        if (std::norm(z) > 144.0) return faddeeva_cf(z);
        return faddeeva_upper(z);
    }
    // reflection into the upper half plane; genuine growth here
    const Complex wm = (std::norm(z) > 144.0) ? faddeeva_cf(-z) : faddeeva_upper(-z);
    return 2.0 * exp_msq(z) - wm;
}

Complex erf(Complex z) {
    if (std::abs(z) >= 30.0) throw DomainError("erf: |z| >= 30");
    if (std::abs(z) <= 1.5) return erf_series(z);
    if (z.real() < 0.0) return -erf(-z);
    // Re z >= 0: 1 - exp(-z^2) w(iz), with Im(iz) >= 0
    const Complex iz(-z.imag(), z.real());
    return 1.0 - exp_msq(z) * faddeeva_w(iz);
}

Complex erfc(Complex z) {
    if (std::abs(z) >= 30.0) throw DomainError("erfc: |z| >= 30");
    if (z.real() >= 0.0) {
        const Complex iz(-z.imag(), z.real());
        return exp_msq(z) * faddeeva_w(iz);
    }
    return 2.0 - erfc(-z);
}

Complex erfc_scaled(Complex z) {
    return faddeeva_w(Complex(-z.imag(), z.real()));
}

double erfi(double y) {
    if (std::abs(y) > 27.0) throw DomainError("erfi: result overflows");
    const double y2 = y * y;
    double term = y;
    double sum = y;
    for (int k = 1; k < 400; ++k) {
        term *= y2 / static_cast<double>(k);
        const double add = term / static_cast<double>(2 * k + 1);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return (2.0 / kSqrtPi) * sum;
}

double sine_integral(double u) {
    const double a = std::abs(u);
    double v;
    if (a <= 4.0) v = si_series(a);
    else if (a <= 1e4) v = si_cf(a);
    else v = si_asymptotic(a);
    return u < 0.0 ? -v : v;
}

} // namespace qarrival::num
