#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qarrival/grid_state.hpp"
#include "qarrival/parallel.hpp"

namespace qarrival::backflow {

/// Discretization of the flux-difference operator
///   F = P_+(T/2) - P_+(-T/2)
/// restricted to positive momenta (hbar = m = 1). In the dimensionless
/// variable u = p sqrt(T/4) the kernel is T-free, so p_max and n_modes
/// fix the physics; T only sets the physical scale.
struct FluxSpectrumProblem {
    double p_max = 12.0;
    int n_modes = 512;
    double T = 4.0;
};

struct FluxMatrix {
    Eigen::MatrixXd sym; // sqrt(w) K sqrt(w), real symmetric
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Momentum kernel  <p| F |p'> = sin((p^2 - p'^2) T/4) / (pi (p - p'))
/// with the removable diagonal  p T / (2 pi).
double flux_kernel(double p, double pp, double T);

/// Gauss-Legendre discretization of F on [0, p_max], symmetrized with
/// sqrt-weight factors.
FluxMatrix build_flux_matrix(const FluxSpectrumProblem& prob, Exec mode = Exec::parallel);

struct BackflowEigenpair {
    double lambda = 0.0;
    std::vector<double> nodes;     // momenta
    std::vector<double> weights;   // quadrature weights
    std::vector<double> amplitude; // phi(p_i), sum w phi^2 = 1
};

/// All eigenvalues, ascending.
std::vector<double> flux_spectrum(const FluxSpectrumProblem& prob);

/// Most negative eigenvalue and its eigenvector.
BackflowEigenpair extremal_eigenvalue(const FluxSpectrumProblem& prob);

/// Eigenpair by index in the ascending spectrum.
BackflowEigenpair eigenpair_by_index(const FluxSpectrumProblem& prob, int index);

/// q(-,+) = lambda (lambda + 1) / 2 for F-eigenstates.
double q_from_lambda(double lambda);

/// ||(1 - theta(p)) F |phi>||^2: the squared negative-momentum content
/// of F applied to the positive-momentum eigenstate. For the restricted
/// eigenproblem the exact quasi-probability is
///   q(-,+) = lambda (lambda + 1)/2 + Delta^2/2.
double negative_momentum_flux_norm(const BackflowEigenpair& pair, double T);

/// Transport of the eigenvector to a position grid via cubic-spline
/// resampling of the momentum amplitude.
states::GridWaveFunction to_grid_state(const BackflowEigenpair& pair,
                                       const states::GridSpec& spec);

struct EigenstateCheck {
    double lambda = 0.0;
    double q_grid = 0.0;            // two-time engine on the transported state
    double q_parabola = 0.0;        // lambda (lambda+1)/2
    double correction = 0.0;        // Delta^2 / 2
    double p_minus_increase = 0.0;  // p_-(t2) - p_-(t1), should be -lambda
};

/// Runs the transported eigenstate through the grid two-time engine
/// with t1 = -T/2, t2 = +T/2 and reports every piece of the identity.
EigenstateCheck verify_eigenstate_q(const BackflowEigenpair& pair,
                                    const FluxSpectrumProblem& prob);

struct ExtrapolationReport {
    std::vector<std::pair<double, double>> sequence; // (p_max, lambda_min)
    double extrapolated = 0.0;
    double error_bar = 0.0;
};

/// lambda_min across a resolution ladder with a linear fit in 1/p_max.
ExtrapolationReport extrapolate_lambda_min(const std::vector<FluxSpectrumProblem>& ladder);

} // namespace qarrival::backflow
