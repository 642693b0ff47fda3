#pragma once

#include <stdexcept>
#include <vector>

#include "qarrival/gaussian_state.hpp"

namespace qarrival::states {

/// Raised when a state does not fit the requested grid.
struct SupportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when the grid cannot resolve the momentum content.
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform spatial grid with samples at x_min + j dx. Factory grids are
/// cell-centered about zero so no sample sits exactly on the origin and
/// the sign masks are unambiguous.
struct GridSpec {
    double x_min = 0.0;
    double dx = 0.0;
    std::size_t n = 0;

    double x(std::size_t j) const { return x_min + dx * static_cast<double>(j); }
    double x_max() const { return x(n - 1); }

    static GridSpec symmetric(double half_width, std::size_t n_points);
};

struct GridWaveFunction {
    GridSpec spec;
    std::vector<Complex> amp;

    std::size_t size() const { return amp.size(); }
};

/// Uniform momentum grid; amplitudes are continuum-normalized so that
/// sum |amp|^2 dp = 1.
struct MomentumWaveFunction {
    double p_min = 0.0;
    double dp = 0.0;
    std::vector<Complex> amp;

    double p(std::size_t j) const { return p_min + dp * static_cast<double>(j); }
};

/// Pointwise sampling of the analytic state on the grid. Refuses grids
/// whose edges carry noticeable amplitude or whose sampled norm is off.
GridWaveFunction to_grid(const WavepacketState& s, const GridSpec& spec);

/// Grid sized to hold the state now and after evolving another t_extra,
/// with pad_sigmas widths of padding; n rounded up to a power of two.
GridSpec auto_grid(const WavepacketState& s, double t_extra,
                   std::size_t min_points = std::size_t{1} << 14, double pad_sigmas = 40.0);

/// Exact grid evolution: diagonal phase multiplication in momentum space.
void evolve_free_in_place(GridWaveFunction& g, double t);
GridWaveFunction evolved(const GridWaveFunction& g, double t);

/// theta(sign x) mask; a sample exactly at x = 0 gets weight 1/2.
void apply_theta(GridWaveFunction& g, int side);
/// Q = sign(x) multiplication; sign(0) = 0 under the half-weight rule.
void apply_sign(GridWaveFunction& g);

Complex inner(const GridWaveFunction& a, const GridWaveFunction& b);
double norm_squared(const GridWaveFunction& g);
double prob_negative_axis(const GridWaveFunction& g);
double prob_positive_axis(const GridWaveFunction& g);

/// J(0) via spectral derivative and linear interpolation across x = 0.
double current_at_origin(const GridWaveFunction& g);

MomentumWaveFunction to_momentum(const GridWaveFunction& g);
GridWaveFunction from_momentum(const MomentumWaveFunction& m, const GridSpec& spec);

/// Checks that the unmasked state is band-limited on this grid: energy
/// in the top decade of |k| below 1e-8 of the total; otherwise throws
/// ResolutionError.
void require_momentum_resolved(const GridWaveFunction& g);

/// Serializes (x, Re psi, Im psi) rows.
void write_grid_csv(const GridWaveFunction& g, const std::string& path);

} // namespace qarrival::states
