#include "qarrival/backflow.hpp"

#include <cmath>
#include <stdexcept>

#include "qarrival/quadrature.hpp"
#include "qarrival/two_time_engine.hpp"

namespace qarrival::backflow {

namespace {
constexpr double kPi = 3.14159265358979323846;

// natural cubic spline on strictly increasing nodes
struct CubicSpline {
    std::vector<double> x, y, m; // second derivatives

    CubicSpline(std::vector<double> xs, std::vector<double> ys)
        : x(std::move(xs)), y(std::move(ys)) {
        const std::size_t n = x.size();
        m.assign(n, 0.0);
        std::vector<double> a(n, 0.0), b(n, 2.0), c(n, 0.0), r(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x[i] - x[i - 1];
            const double h1 = x[i + 1] - x[i];
            a[i] = h0 / (h0 + h1);
            c[i] = h1 / (h0 + h1);
            r[i] = 6.0 / (h0 + h1) * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        }
        // Thomas solve with natural ends (m[0] = m[n-1] = 0)
        for (std::size_t i = 2; i + 1 < n; ++i) {
            const double w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            r[i] -= w * r[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m[i] = (r[i] - c[i] * (i + 2 < n ? m[i + 1] : 0.0)) / b[i];
            if (i == 1) break;
        }
    }

    double operator()(double xi) const {
        if (xi <= x.front() || xi >= x.back()) return 0.0;
        std::size_t lo = 0, hi = x.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (x[mid] > xi) hi = mid;
            else lo = mid;
        }
        const double h = x[hi] - x[lo];
        const double t = (xi - x[lo]) / h;
        const double s = 1.0 - t;
        return s * y[lo] + t * y[hi] +
               h * h / 6.0 * ((s * s * s - s) * m[lo] + (t * t * t - t) * m[hi]);
    }
};

} // namespace

double flux_kernel(double p, double pp, double T) {
    const double amp = 0.25 * T * (p + pp);
    const double d = p - pp;
    const double arg = amp * d;
    if (std::abs(arg) < 1e-8) return (amp / kPi) * (1.0 - arg * arg / 6.0);
    return std::sin(arg) / (kPi * d);
}

FluxMatrix build_flux_matrix(const FluxSpectrumProblem& prob, Exec mode) {
    if (prob.n_modes < 64) throw std::invalid_argument("build_flux_matrix: n_modes >= 64");
    if (prob.T < 0.0) throw std::invalid_argument("build_flux_matrix: T >= 0");
    FluxMatrix fm;
    const auto rule = num::mapped(num::gauss_legendre(prob.n_modes), 0.0, prob.p_max);
    fm.nodes = rule.nodes;
    fm.weights = rule.weights;
    const auto n = static_cast<Eigen::Index>(prob.n_modes);
    fm.sym.resize(n, n);
    std::vector<double> sw(fm.weights.size());
    for (std::size_t i = 0; i < sw.size(); ++i) sw[i] = std::sqrt(fm.weights[i]);
    parallel_for(n, mode, [&](long i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = sw[static_cast<std::size_t>(i)] *
                             flux_kernel(fm.nodes[static_cast<std::size_t>(i)],
                                         fm.nodes[static_cast<std::size_t>(j)], prob.T) *
                             sw[static_cast<std::size_t>(j)];
            fm.sym(i, j) = v;
            fm.sym(j, i) = v;
        }
    });
    return fm;
}

namespace {

BackflowEigenpair pair_from(const FluxMatrix& fm,
                            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es,
                            int index) {
    BackflowEigenpair p;
    p.lambda = es.eigenvalues()(index);
    p.nodes = fm.nodes;
    p.weights = fm.weights;
    p.amplitude.resize(fm.nodes.size());
    const auto& v = es.eigenvectors().col(index);
    for (std::size_t i = 0; i < p.amplitude.size(); ++i)
        p.amplitude[i] = v(static_cast<Eigen::Index>(i)) / std::sqrt(fm.weights[i]);
    return p;
}

} // namespace

std::vector<double> flux_spectrum(const FluxSpectrumProblem& prob) {
    const auto fm = build_flux_matrix(prob);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fm.sym, Eigen::EigenvaluesOnly);
    std::vector<double> ev(static_cast<std::size_t>(prob.n_modes));
    for (std::size_t i = 0; i < ev.size(); ++i)
        ev[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
    return ev;
}

BackflowEigenpair extremal_eigenvalue(const FluxSpectrumProblem& prob) {
    return eigenpair_by_index(prob, 0);
}

BackflowEigenpair eigenpair_by_index(const FluxSpectrumProblem& prob, int index) {
    const auto fm = build_flux_matrix(prob);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fm.sym);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("extremal_eigenvalue: eigensolver failed");
    return pair_from(fm, es, index);
}

double q_from_lambda(double lambda) {
    if (lambda < -1.0 || lambda > 1.0)
        throw std::invalid_argument("q_from_lambda: lambda outside [-1, 1]");
    return 0.5 * lambda * (lambda + 1.0);
}

double negative_momentum_flux_norm(const BackflowEigenpair& pair, double T) {
    // (F phi)(p) for p < 0, squared and integrated
    const int nq = 2000;
    const double P = 10.0 * pair.nodes.back();
    const auto rule = num::mapped(num::gauss_legendre(nq), -P, 0.0);
    double total = 0.0;
    for (int k = 0; k < nq; ++k) {
        const double p = rule.nodes[static_cast<std::size_t>(k)];
        double f = 0.0;
        for (std::size_t i = 0; i < pair.nodes.size(); ++i)
            f += pair.weights[i] * flux_kernel(p, pair.nodes[i], T) * pair.amplitude[i];
        total += rule.weights[static_cast<std::size_t>(k)] * f * f;
    }
    return total;
}

states::GridWaveFunction to_grid_state(const BackflowEigenpair& pair,
                                       const states::GridSpec& spec) {
    CubicSpline spline(pair.nodes, pair.amplitude);
    states::MomentumWaveFunction m;
    m.dp = 2.0 * kPi / (spec.dx * static_cast<double>(spec.n));
    m.p_min = -m.dp * static_cast<double>(spec.n / 2);
    m.amp.resize(spec.n);
    double n2 = 0.0;
    for (std::size_t j = 0; j < spec.n; ++j) {
        const double p = m.p(j);
        const double v = (p > 0.0) ? spline(p) : 0.0;
        m.amp[j] = v;
        n2 += v * v;
    }
    n2 *= m.dp;
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& a : m.amp) a *= scale;
    return states::from_momentum(m, spec);
}

EigenstateCheck verify_eigenstate_q(const BackflowEigenpair& pair,
                                    const FluxSpectrumProblem& prob) {
    EigenstateCheck out;
    out.lambda = pair.lambda;
    out.q_parabola = q_from_lambda(pair.lambda);
    out.correction = 0.5 * negative_momentum_flux_norm(pair, prob.T);
    // the 1/x position tails of a positive-momentum state require a wide
    // box; resolution only has to cover p_max
    const double X = 1200.0;
    const auto spec = states::GridSpec::symmetric(X, std::size_t{1} << 17);
    auto g = to_grid_state(pair, spec);
    twotime::GridEngine eng(std::move(g), -0.5 * prob.T, 0.5 * prob.T);
    out.q_grid = eng.quasi().at(-1, +1);
    out.p_minus_increase =
        states::prob_negative_axis(eng.state_at_t2()) -
        states::prob_negative_axis(eng.state_at_t1());
    return out;
}

ExtrapolationReport extrapolate_lambda_min(const std::vector<FluxSpectrumProblem>& ladder) {
    if (ladder.size() < 2)
        throw std::invalid_argument("extrapolate_lambda_min: need >= 2 rungs");
    ExtrapolationReport rep;
    for (const auto& prob : ladder) {
        const auto ev = flux_spectrum(prob);
        rep.sequence.emplace_back(prob.p_max, ev.front());
    }
    // least-squares line lambda = lambda_inf + c / p_max
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(rep.sequence.size());
    for (const auto& [u, l] : rep.sequence) {
        const double xi = 1.0 / u;
        sx += xi;
        sy += l;
        sxx += xi * xi;
        sxy += xi * l;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.extrapolated = (sy - slope * sx) / n;
    rep.error_bar = std::abs(rep.extrapolated - rep.sequence.back().second);
    return rep;
}

} // namespace qarrival::backflow
