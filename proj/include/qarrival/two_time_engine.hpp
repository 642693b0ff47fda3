#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qarrival/grid_state.hpp"
#include "qarrival/two_time_table.hpp"

namespace qarrival::twotime {

using states::Complex;
using states::GridSpec;
using states::GridWaveFunction;
using states::WavepacketState;

/// Heisenberg-picture two-time machinery on a spatial grid. Projectors
/// are sharp masks; Heisenberg evolution is evolve / mask / evolve, so
/// every table identity holds to rounding on the fixed grid.
class GridEngine {
public:
    GridEngine(const WavepacketState& s, double t1, double t2, const GridSpec& spec);
    GridEngine(const WavepacketState& s, double t1, double t2);
    /// Grid input is taken as the state at time t = 0.
    GridEngine(GridWaveFunction psi0, double t1, double t2);

    double t1() const { return t1_; }
    double t2() const { return t2_; }

    /// q(s1,s2) = Re <psi| P_{s2}(t2) P_{s1}(t1) |psi>
    TwoTimeTable quasi() const;
    /// p12(s1,s2) = || P_{s2}(t2) P_{s1}(t1) |psi> ||^2
    TwoTimeTable sequential() const;
    /// D(s1,s2 | s1', s2)
    Complex decoherence(int s1, int s1p, int s2) const;

    /// Tr(P_s(t_i) rho) for i in {1,2}
    double single_time_prob(int which_time, int s) const;
    /// Tr(P_{s2}(t2) rho_M(t1)) with rho_M the post-measurement mixture
    double measured_prob_t2(int s2) const;

    /// <Q2^(1)> = s2-moment of the sequential table
    double disturbed_mean() const;
    /// same quantity via <Q2> + (1/2) <[Q1,Q2] Q1>
    double disturbed_mean_commutator_route() const;

    /// (1/8) < (1 + s1 Q1 + s2 Q2)^2 - 1 >, built from the state vector
    double witness(int s1, int s2) const;

    const GridWaveFunction& state_at_t1() const { return psi1_; }
    const GridWaveFunction& state_at_t2() const { return psi2_; }

private:
    void build(GridWaveFunction psi0);

    double t1_ = 0.0, t2_ = 0.0;
    GridWaveFunction psi1_;    // state at t1
    GridWaveFunction psi2_;    // state at t2
    GridWaveFunction chi_[2];  // U_tau theta_s psi1, s index 0:-, 1:+
};

/// Convenience wrappers with automatic grid sizing.
TwoTimeTable quasi_probability(const WavepacketState& s, double t1, double t2);
TwoTimeTable sequential_probability(const WavepacketState& s, double t1, double t2);
Complex decoherence_functional(const WavepacketState& s, double t1, double t2,
                               int s1, int s1p, int s2);
double disturbed_mean(const WavepacketState& s, double t1, double t2);
double lower_bound_witness(const WavepacketState& s, double t1, double t2, int s1, int s2);

/// Convex mixtures: every table is linear in rho.
TwoTimeTable quasi_probability(const std::vector<std::pair<double, WavepacketState>>& mix,
                               double t1, double t2);

} // namespace qarrival::twotime
