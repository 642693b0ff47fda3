#include "qarrival/two_time_engine.hpp"

#include <cmath>
#include <stdexcept>

namespace qarrival::twotime {

namespace {

GridWaveFunction masked(const GridWaveFunction& g, int side) {
    GridWaveFunction out = g;
    states::apply_theta(out, side);
    return out;
}

Complex masked_inner(const GridWaveFunction& bra, const GridWaveFunction& ket, int side) {
    // <bra| theta_side |ket>
    Complex s(0.0, 0.0);
    for (std::size_t j = 0; j < bra.size(); ++j) {
        const double x = bra.spec.x(j);
        double w;
        if (x == 0.0) w = 0.5;
        else w = ((side > 0) == (x > 0.0)) ? 1.0 : 0.0;
        if (w != 0.0) s += w * std::conj(bra.amp[j]) * ket.amp[j];
    }
    return s * bra.spec.dx;
}

} // namespace

GridEngine::GridEngine(const WavepacketState& s, double t1, double t2, const GridSpec& spec)
    : t1_(t1), t2_(t2) {
    if (!(t2 > t1) || t1 < 0.0) throw std::invalid_argument("GridEngine: need t2 > t1 >= 0");
    build(states::to_grid(s, spec));
}

GridEngine::GridEngine(const WavepacketState& s, double t1, double t2)
    : GridEngine(s, t1, t2, states::auto_grid(s, t2)) {}

GridEngine::GridEngine(GridWaveFunction psi0, double t1, double t2) : t1_(t1), t2_(t2) {
    if (!(t2 > t1)) throw std::invalid_argument("GridEngine: need t2 > t1");
    build(std::move(psi0));
}

void GridEngine::build(GridWaveFunction psi0) {
    states::require_momentum_resolved(psi0);
    psi1_ = std::move(psi0);
    states::evolve_free_in_place(psi1_, t1_);
    const double tau = t2_ - t1_;
    chi_[0] = masked(psi1_, -1);
    chi_[1] = masked(psi1_, +1);
    states::evolve_free_in_place(chi_[0], tau);
    states::evolve_free_in_place(chi_[1], tau);
    // linearity: U_tau psi1 = U_tau theta_- psi1 + U_tau theta_+ psi1
    psi2_ = chi_[0];
    for (std::size_t j = 0; j < psi2_.size(); ++j) psi2_.amp[j] += chi_[1].amp[j];
}

TwoTimeTable GridEngine::quasi() const {
    TwoTimeTable t;
    t.kind = TableKind::quasi;
    t.t1 = t1_;
    t.t2 = t2_;
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1})
            t.at(s1, s2) = masked_inner(psi2_, chi_[sidx(s1)], s2).real();
    return t;
}

TwoTimeTable GridEngine::sequential() const {
    TwoTimeTable t;
    t.kind = TableKind::sequential;
    t.t1 = t1_;
    t.t2 = t2_;
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1})
            t.at(s1, s2) = masked_inner(chi_[sidx(s1)], chi_[sidx(s1)], s2).real();
    return t;
}

Complex GridEngine::decoherence(int s1, int s1p, int s2) const {
    return masked_inner(chi_[sidx(s1p)], chi_[sidx(s1)], s2);
}

double GridEngine::single_time_prob(int which_time, int s) const {
    const GridWaveFunction& g = (which_time == 1) ? psi1_ : psi2_;
    return masked_inner(g, g, s).real();
}

double GridEngine::measured_prob_t2(int s2) const {
    return masked_inner(chi_[0], chi_[0], s2).real() +
           masked_inner(chi_[1], chi_[1], s2).real();
}

double GridEngine::disturbed_mean() const {
    const auto p12 = sequential();
    double m = 0.0;
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1}) m += s2 * p12.at(s1, s2);
    return m;
}

double GridEngine::disturbed_mean_commutator_route() const {
    // <Q2> + (1/2)(<Q1 Q2 Q1> - <Q2>)
    GridWaveFunction q1psi = psi1_;
    states::apply_sign(q1psi);
    GridWaveFunction q1psi_t2 = q1psi;
    states::evolve_free_in_place(q1psi_t2, t2_ - t1_);
    GridWaveFunction sign_q1psi_t2 = q1psi_t2;
    states::apply_sign(sign_q1psi_t2);
    const double q1q2q1 = states::inner(q1psi_t2, sign_q1psi_t2).real();
    GridWaveFunction sign_psi2 = psi2_;
    states::apply_sign(sign_psi2);
    const double q2 = states::inner(psi2_, sign_psi2).real();
    return q2 + 0.5 * (q1q2q1 - q2);
}

double GridEngine::witness(int s1, int s2) const {
    // w = (1 + s1 Q1 + s2 Q2) psi at t1
    GridWaveFunction q1psi = psi1_;
    states::apply_sign(q1psi);
    // Q2 psi at t1 = U^dag_tau sign U_tau psi1
    GridWaveFunction q2psi = psi2_;
    states::apply_sign(q2psi);
    states::evolve_free_in_place(q2psi, -(t2_ - t1_));
    GridWaveFunction w = psi1_;
    for (std::size_t j = 0; j < w.size(); ++j)
        w.amp[j] += static_cast<double>(s1) * q1psi.amp[j] +
                    static_cast<double>(s2) * q2psi.amp[j];
    return (states::norm_squared(w) - 1.0) / 8.0;
}

TwoTimeTable quasi_probability(const WavepacketState& s, double t1, double t2) {
    return GridEngine(s, t1, t2).quasi();
}

TwoTimeTable sequential_probability(const WavepacketState& s, double t1, double t2) {
    return GridEngine(s, t1, t2).sequential();
}

Complex decoherence_functional(const WavepacketState& s, double t1, double t2, int s1,
                               int s1p, int s2) {
    return GridEngine(s, t1, t2).decoherence(s1, s1p, s2);
}

double disturbed_mean(const WavepacketState& s, double t1, double t2) {
    return GridEngine(s, t1, t2).disturbed_mean();
}

double lower_bound_witness(const WavepacketState& s, double t1, double t2, int s1, int s2) {
    return GridEngine(s, t1, t2).witness(s1, s2);
}

TwoTimeTable quasi_probability(const std::vector<std::pair<double, WavepacketState>>& mix,
                               double t1, double t2) {
    TwoTimeTable out;
    out.kind = TableKind::quasi;
    out.t1 = t1;
    out.t2 = t2;
    for (const auto& [w, s] : mix) {
        const auto t = quasi_probability(s, t1, t2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out.v[i][j] += w * t.v[i][j];
    }
    return out;
}

} // namespace qarrival::twotime
