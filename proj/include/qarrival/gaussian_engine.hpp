#pragma once

#include <array>
#include <complex>
#include <vector>

#include "qarrival/gaussian_state.hpp"
#include "qarrival/two_time_table.hpp"

namespace qarrival::twotime {

using states::Complex;
using states::QuadraticWave;
using states::WavepacketState;

/// Free evolution of a half-line-chopped exp-quadratic wave,
///   chi(x) = [U_tau theta_side phi](x),
/// in closed form through the Faddeeva function.
struct ChoppedEvolvedWave {
    Complex prefactor;     // K
    Complex quad_phase;    // i/(2 tau)
    Complex beta0, beta1;  // beta(x) = beta0 + beta1 x
    Complex inv_two_sqrt_a;
    int side = +1;

    Complex value(double x) const;
};

ChoppedEvolvedWave chop_and_evolve(const QuadraticWave& phi_t1, int side, double tau);

/// Two-time tables for Gaussian superpositions by semi-analytic
/// quadrature: every matrix element reduces to one-dimensional
/// integrals of smooth-enveloped oscillatory closed forms. Serves as an
/// independent high-accuracy route next to the grid engine, and stays
/// accurate at very small t2 - t1 where a grid cannot.
class GaussianEngine {
public:
    GaussianEngine(const WavepacketState& s, double t1, double t2, double tol = 1e-11);

    TwoTimeTable quasi() const;
    TwoTimeTable sequential() const;
    Complex decoherence(int s1, int s1p, int s2) const;
    double single_time_prob(int which_time, int s) const;
    double disturbed_mean() const;

    /// q assembled from externally supplied coefficients (the packet
    /// geometry is fixed; only the superposition weights change). Used
    /// for coefficient sweeps: the pair tensors are computed once.
    TwoTimeTable quasi_for_coefficients(const std::vector<Complex>& coeff) const;
    double norm_for_coefficients(const std::vector<Complex>& coeff) const;

private:
    Complex T(int s1, int s2, std::size_t i, std::size_t j) const {
        return T_[sidx(s1)][sidx(s2)][i * n_ + j];
    }
    Complex U(int a, int b, int s2, std::size_t i, std::size_t j) const {
        return U_[sidx(a)][sidx(b)][sidx(s2)][i * n_ + j];
    }

    std::size_t n_ = 0;
    double t1_ = 0.0, t2_ = 0.0;
    std::vector<Complex> coeff_;
    std::vector<QuadraticWave> wave_t1_, wave_t2_;
    std::array<std::array<std::vector<Complex>, 2>, 2> T_;                // [s1][s2]
    std::array<std::array<std::array<std::vector<Complex>, 2>, 2>, 2> U_; // [a][b][s2]
    std::vector<Complex> gram_;
};

} // namespace qarrival::twotime
