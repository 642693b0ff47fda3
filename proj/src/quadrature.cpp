#include "qarrival/quadrature.hpp"

#include <cmath>

namespace qarrival::num {

namespace {

// Gauss-Kronrod 7-15 pair on [-1,1] (Kronrod nodes/weights, Gauss
// weights on the embedded 7 points).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    std::complex<double> integral;
    double error;
    double abs_integral;
};

PanelResult gk15(const std::function<std::complex<double>(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::complex<double> resK(0.0, 0.0), resG(0.0, 0.0);
    double resA = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * kXgk[i];
        const std::complex<double> fl = f(c - dx);
        const std::complex<double> fr = (i == 7) ? fl : f(c + dx);
        const std::complex<double> both = (i == 7) ? fl : fl + fr;
        resK += kWgk[i] * both;
        resA += kWgk[i] * ((i == 7) ? std::abs(fl) : std::abs(fl) + std::abs(fr));
        if (i % 2 == 1) resG += kWg[i / 2] * both;
    }
    resK *= h;
    resG *= h;
    resA *= std::abs(h);
    return {resK, std::abs(resK - resG), resA};
}

struct Segment {
    double a, b;
    std::complex<double> integral;
    double error;
    double abs_integral;
};

IntegrationResult adapt(const std::function<std::complex<double>(double)>& f,
                        const std::vector<double>& breaks, double tol, long max_evals) {
    std::vector<Segment> segs;
    long evals = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        auto r = gk15(f, breaks[i], breaks[i + 1]);
        evals += 15;
        segs.push_back({breaks[i], breaks[i + 1], r.integral, r.error, r.abs_integral});
    }
    auto total = [&segs] {
        std::complex<double> v(0.0, 0.0);
        double e = 0.0, va = 0.0;
        for (const auto& s : segs) {
            v += s.integral;
            e += s.error;
            va += s.abs_integral;
        }
        return std::tuple(v, e, va);
    };
    while (true) {
        auto [value, err, vabs] = total();
        // second condition is the roundoff floor: no refinement can beat it
        if (err <= tol || err <= 64.0 * 2.2e-16 * vabs) return {value, err, evals};
        if (evals > max_evals)
            throw ConvergenceError("integrate: evaluation budget exhausted", value, err);
        // split the worst segment
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        Segment s = segs[worst];
        const double m = 0.5 * (s.a + s.b);
        if (m == s.a || m == s.b)
            throw ConvergenceError("integrate: interval underflow", value, err);
        auto rl = gk15(f, s.a, m);
        auto rr = gk15(f, m, s.b);
        evals += 30;
        segs[worst] = {s.a, m, rl.integral, rl.error, rl.abs_integral};
        segs.push_back({m, s.b, rr.integral, rr.error, rr.abs_integral});
    }
}

} // namespace

QuadratureRule gauss_legendre(int n) {
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        double z = std::cos(3.14159265358979323846 * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        double p1 = 1.0, p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        rule.nodes[static_cast<std::size_t>(i - 1)] = -z;
        rule.nodes[static_cast<std::size_t>(n - i)] = z;
        rule.weights[static_cast<std::size_t>(i - 1)] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[static_cast<std::size_t>(n - i)] = rule.weights[static_cast<std::size_t>(i - 1)];
    }
    return rule;
}

QuadratureRule mapped(const QuadratureRule& rule, double a, double b) {
    QuadratureRule out = rule;
    const double c = 0.5 * (b - a);
    const double d = 0.5 * (b + a);
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
        out.nodes[i] = c * rule.nodes[i] + d;
        out.weights[i] = c * rule.weights[i];
    }
    out.a = a;
    out.b = b;
    return out;
}

IntegrationResult integrate(const std::function<std::complex<double>(double)>& f,
                            double a, double b, double tol, long max_evals) {
    const bool inf_a = std::isinf(a);
    const bool inf_b = std::isinf(b);
    if (!inf_a && !inf_b) {
        return adapt(f, {a, 0.5 * (a + b), b}, tol, max_evals);
    }
    if (!inf_a && inf_b) {
        // x = a + t/(1-t), t in [0,1)
        auto g = [&f, a](double t) {
            const double om = 1.0 - t;
            return f(a + t / om) / (om * om);
        };
        return adapt(g, {0.0, 0.5, 1.0 - 1e-14}, tol, max_evals);
    }
    if (inf_a && !inf_b) {
        auto g = [&f, b](double t) {
            const double om = 1.0 - t;
            return f(b - t / om) / (om * om);
        };
        return adapt(g, {0.0, 0.5, 1.0 - 1e-14}, tol, max_evals);
    }
    // both infinite: x = t/(1-t^2)
    auto g = [&f](double t) {
        const double om = 1.0 - t * t;
        return f(t / om) * (1.0 + t * t) / (om * om);
    };
    return adapt(g, {-1.0 + 1e-14, 0.0, 1.0 - 1e-14}, tol, max_evals);
}

IntegrationResult integrate_panels(const std::function<std::complex<double>(double)>& f,
                                   const std::vector<double>& breakpoints, double tol,
                                   long max_evals) {
    if (breakpoints.size() < 2) throw std::invalid_argument("integrate_panels: need >= 2 breakpoints");
    return adapt(f, breakpoints, tol, max_evals);
}

} // namespace qarrival::num
