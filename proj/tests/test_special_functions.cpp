#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qarrival/quadrature.hpp"
#include "qarrival/rng.hpp"
#include "qarrival/special_functions.hpp"

using qarrival::num::Complex;
namespace num = qarrival::num;

namespace {

// quadrature oracle: erf(z) = (2/sqrt(pi)) int_0^1 z exp(-(tz)^2) dt
Complex erf_by_quadrature(Complex z, double tol = 1e-13) {
    auto f = [z](double t) {
        const Complex w = t * z;
        return z * std::exp(-w * w);
    };
    const auto r = num::integrate(f, 0.0, 1.0, tol);
    return (2.0 / std::sqrt(M_PI)) * r.value;
}

double erfi_by_quadrature(double y) {
    auto f = [](double t) { return Complex(std::exp(t * t), 0.0); };
    const auto r = num::integrate(f, 0.0, y, 1e-13);
    return (2.0 / std::sqrt(M_PI)) * r.value.real();
}

double si_by_quadrature(double u) {
    auto f = [](double t) {
        return Complex(t == 0.0 ? 1.0 : std::sin(t) / t, 0.0);
    };
    return num::integrate(f, 0.0, u, 1e-13).value.real();
}

} // namespace

TEST_CASE("faddeeva reference points") {
    CHECK(num::faddeeva_w({0.0, 0.0}).real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(num::faddeeva_w({0.0, 0.0}).imag() == doctest::Approx(0.0).epsilon(1e-13));
    // w(i) = e * erfc(1)
    const double wi = std::exp(1.0) * std::erfc(1.0);
    CHECK(num::faddeeva_w({0.0, 1.0}).real() == doctest::Approx(wi).epsilon(1e-13));
    // real axis: w(x) = exp(-x^2) + i * 2 Dawson(x)/sqrt(pi); check real part
    for (double x : {0.3, 1.0, 2.5, 6.0, 11.0}) {
        CHECK(num::faddeeva_w({x, 0.0}).real() ==
              doctest::Approx(std::exp(-x * x)).epsilon(1e-11));
    }
}

TEST_CASE("faddeeva against contour-integral oracle") {
    // w(z) = (i/pi) int exp(-t^2)/(z-t) dt for Im z > 0
    std::mt19937_64 gen(7);
    for (int it = 0; it < 40; ++it) {
        const Complex z(num::uniform(gen, -6.0, 6.0), num::uniform(gen, 0.05, 6.0));
        auto f = [z](double t) { return std::exp(-t * t) / (z - t); };
        const auto r = num::integrate(f, -12.0, 12.0, 1e-13);
        const Complex ref = Complex(0.0, 1.0 / M_PI) * r.value;
        const Complex got = num::faddeeva_w(z);
        CHECK(std::abs(got - ref) < 1e-11 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("faddeeva large-argument asymptotics") {
    // w(z) ~ i/(sqrt(pi) z) (1 + 1/(2 z^2) + 3/(4 z^4) + 15/(8 z^6))
    for (double r : {50.0, 300.0, 1e4}) {
        for (double ang : {0.1, 1.0, 2.6}) {
            const Complex z = r * Complex(std::cos(ang), std::sin(ang));
            const Complex z2 = z * z;
            const Complex ref = Complex(0, 1) / (std::sqrt(M_PI) * z) *
                                (1.0 + 0.5 / z2 + 0.75 / (z2 * z2) + 1.875 / (z2 * z2 * z2));
            CHECK(std::abs(num::faddeeva_w(z) - ref) < 1e-11 * std::abs(ref));
        }
    }
}

TEST_CASE("erf matches quadrature oracle on random complex points") {
    std::mt19937_64 gen(11);
    for (int it = 0; it < 60; ++it) {
        const Complex z(num::uniform(gen, -4.0, 4.0), num::uniform(gen, -4.0, 4.0));
        const Complex ref = erf_by_quadrature(z);
        const Complex got = num::erf(z);
        CHECK(std::abs(got - ref) <= 1e-10 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("erf is odd: erf(-z) = -erf(z)") {
    std::mt19937_64 gen(13);
    for (int it = 0; it < 1000; ++it) {
        const Complex z(num::uniform(gen, -5.0, 5.0), num::uniform(gen, -5.0, 5.0));
        const Complex a = num::erf(z);
        const Complex b = num::erf(-z);
        CHECK(std::abs(a + b) <= 1e-12 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("erf edge values and domain guard") {
    CHECK(std::abs(num::erf({0.0, 0.0})) == 0.0);
    CHECK(num::erf({1.0, 0.0}).real() == doctest::Approx(std::erf(1.0)).epsilon(1e-13));
    CHECK(num::erfc({2.0, 0.0}).real() == doctest::Approx(std::erfc(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS((void)num::erf({25.0, 20.0}), num::DomainError);
}

TEST_CASE("erfc at the packet-tail scale quoted for L/sigma = 2.3") {
    // erfc(2.3/sqrt(2)) ~ 0.0214, so the quarter bound is ~0.005
    const double v = num::erfc({2.3 / std::sqrt(2.0), 0.0}).real();
    CHECK(v == doctest::Approx(0.0214).epsilon(0.02));
    CHECK(0.25 * v == doctest::Approx(0.005).epsilon(0.10));
}

TEST_CASE("erfi basics and quadrature cross-check") {
    CHECK(num::erfi(0.0) == 0.0);
    for (double y : {0.3, 1.15, 2.0, 4.5}) {
        CHECK(num::erfi(-y) == doctest::Approx(-num::erfi(y)).epsilon(1e-14));
        const double ref = erfi_by_quadrature(y);
        CHECK(num::erfi(y) == doctest::Approx(ref).epsilon(1e-10));
    }
    // erfi(y) = -i erf(iy)
    const Complex v = Complex(0, -1) * num::erf(Complex(0.0, 1.15));
    CHECK(v.real() == doctest::Approx(num::erfi(1.15)).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-14);
}

TEST_CASE("erfc_scaled equals exp(z^2) erfc(z)") {
    std::mt19937_64 gen(17);
    for (int it = 0; it < 50; ++it) {
        const Complex z(num::uniform(gen, 0.0, 3.0), num::uniform(gen, -3.0, 3.0));
        const Complex lhs = num::erfc_scaled(z);
        const Complex rhs = std::exp(z * z) * num::erfc(z);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("sine integral values") {
    CHECK(num::sine_integral(0.0) == 0.0);
    CHECK(num::sine_integral(M_PI) == doctest::Approx(si_by_quadrature(M_PI)).epsilon(1e-12));
    for (double u : {0.5, 2.0, 3.9, 4.1, 7.0, 30.0, 240.0}) {
        CHECK(num::sine_integral(u) == doctest::Approx(si_by_quadrature(u)).epsilon(1e-10));
    }
}

TEST_CASE("sine integral is odd and monotone on [0, pi]") {
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double u = M_PI * i / 200.0;
        const double v = num::sine_integral(u);
        CHECK(num::sine_integral(-u) == doctest::Approx(-v).epsilon(1e-14));
        CHECK(v >= prev - 1e-14);
        prev = v;
    }
}

TEST_CASE("sine integral approaches pi/2; quantum step vanishes") {
    for (double u : {1.001e4, 3e4, 1e6}) {
        CHECK(std::abs(num::sine_integral(u) - M_PI / 2) < 1e-4);
        CHECK(std::abs(0.5 - num::sine_integral(u) / M_PI - 0.0) < 1e-4);
    }
    CHECK(std::abs(0.5 - num::sine_integral(-1e4) / M_PI - 1.0) < 1e-4);
}
