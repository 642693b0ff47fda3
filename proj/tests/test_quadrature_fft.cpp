#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qarrival/fft.hpp"
#include "qarrival/quadrature.hpp"
#include "qarrival/rng.hpp"

using qarrival::num::Complex;
namespace num = qarrival::num;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    for (int n : {4, 8, 16, 48}) {
        const auto rule = num::mapped(num::gauss_legendre(n), -1.0, 1.0);
        for (const double w : rule.weights) CHECK(w > 0.0);
        // degree 2n-1 monomials
        for (int d = 0; d <= 2 * n - 1; ++d) {
            double s = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                s += rule.weights[i] * std::pow(rule.nodes[i], d);
            const double exact = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
            CHECK(s == doctest::Approx(exact).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("adaptive integrate basics") {
    // semi-infinite Gaussian
    auto g = [](double x) { return Complex(std::exp(-x * x), 0.0); };
    const auto r = num::integrate(g, 0.0, num::infinity(), 1e-12);
    CHECK(r.value.real() == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-12));
    // odd integrand
    auto h = [](double x) { return Complex(x, 0.0); };
    CHECK(std::abs(num::integrate(h, -1.0, 1.0, 1e-13).value) < 1e-14);
    // oscillatory
    auto osc = [](double x) { return std::exp(Complex(0.0, 50.0 * x)); };
    const auto ro = num::integrate(osc, 0.0, 1.0, 1e-12);
    const Complex exact = (std::exp(Complex(0, 50.0)) - 1.0) / Complex(0, 50.0);
    CHECK(std::abs(ro.value - exact) < 1e-11);
}

TEST_CASE("integrate is linear") {
    auto f = [](double x) { return Complex(std::cos(x), std::sin(2 * x)); };
    auto g = [](double x) { return Complex(std::exp(-x * x), x); };
    const Complex a(1.3, -0.4), b(0.7, 2.1);
    auto fg = [&](double x) { return a * f(x) + b * g(x); };
    const auto rf = num::integrate(f, -2.0, 3.0, 1e-13);
    const auto rg = num::integrate(g, -2.0, 3.0, 1e-13);
    const auto rfg = num::integrate(fg, -2.0, 3.0, 1e-13);
    CHECK(std::abs(rfg.value - (a * rf.value + b * rg.value)) < 1e-10);
}

TEST_CASE("integrate reports non-convergence with best estimate") {
    auto wild = [](double x) { return std::exp(Complex(0.0, 4000.0 * x * x)); };
    CHECK_THROWS_AS((void)num::integrate(wild, 0.0, 30.0, 1e-14, 600),
                    num::ConvergenceError);
    try {
        (void)num::integrate(wild, 0.0, 30.0, 1e-14, 600);
    } catch (const num::ConvergenceError& e) {
        CHECK(std::isfinite(e.best_estimate.real()));
        CHECK(e.error_estimate > 0.0);
    }
}

TEST_CASE("integrate_panels handles pre-split oscillatory integrands") {
    auto osc = [](double x) { return std::exp(Complex(0.0, 200.0 * x)); };
    std::vector<double> brk;
    for (int i = 0; i <= 64; ++i) brk.push_back(i / 64.0);
    const auto r = num::integrate_panels(osc, brk, 1e-12);
    const Complex exact = (std::exp(Complex(0, 200.0)) - 1.0) / Complex(0, 200.0);
    CHECK(std::abs(r.value - exact) < 1e-11);
}

TEST_CASE("fft round trip and Parseval") {
    std::mt19937_64 gen(3);
    std::vector<Complex> v(1024);
    for (auto& c : v) c = Complex(num::uniform(gen, -1, 1), num::uniform(gen, -1, 1));
    auto w = v;
    num::fft(w);
    double sum_t = 0.0, sum_f = 0.0;
    for (const auto& c : v) sum_t += std::norm(c);
    for (const auto& c : w) sum_f += std::norm(c);
    CHECK(sum_f == doctest::Approx(sum_t * 1024.0).epsilon(1e-12));
    num::ifft(w);
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(v[i] - w[i]));
    CHECK(err < 1e-13);
}

TEST_CASE("fft of a delta is flat") {
    std::vector<Complex> v(64, Complex(0, 0));
    v[0] = 1.0;
    num::fft(v);
    for (const auto& c : v) CHECK(std::abs(c - 1.0) < 1e-14);
}
