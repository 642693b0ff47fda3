#include "qarrival/ambiguous.hpp"

#include <cmath>

#include "qarrival/rng.hpp"

namespace qarrival::ambiguous {

AmbiguityModel AmbiguityModel::make(double eps) {
    if (!(eps > 0.0) || eps > 1.0)
        throw std::invalid_argument("AmbiguityModel: epsilon must be in (0, 1]");
    AmbiguityModel m;
    m.epsilon = eps;
    // alpha index 0:-, 1:+; s index 0:-, 1:+
    for (int a : {-1, +1})
        for (int s : {-1, +1}) {
            m.c[sidx(a)][sidx(s)] = 0.5 * (a == s ? 1.0 + eps : 1.0 - eps);
            m.d[sidx(s)][sidx(a)] = (a == s ? 1.0 + eps : -1.0 + eps) / (2.0 * eps);
        }
    return m;
}

nlohmann::json AmbiguousJoint::to_json() const {
    nlohmann::json j{{"mm", v[0][0]}, {"mp", v[0][1]}, {"pm", v[1][0]},
                     {"pp", v[1][1]}, {"kind", "ambiguous-joint"},
                     {"t1", t1},      {"t2", t2},      {"epsilon", epsilon}};
    if (n_samples) j["n_samples"] = *n_samples;
    return j;
}

AmbiguousJoint ambiguous_joint(const WavepacketState& s, double t1, double t2,
                               const AmbiguityModel& m) {
    return ambiguous_joint(s, t1, t2, m, states::auto_grid(s, t2));
}

AmbiguousJoint ambiguous_joint(const WavepacketState& s, double t1, double t2,
                               const AmbiguityModel& m, const GridSpec& spec) {
    if (!(t2 > t1) || t1 < 0.0)
        throw std::invalid_argument("ambiguous_joint: need t2 > t1 >= 0");
    auto psi1 = states::to_grid(s, spec);
    states::evolve_free_in_place(psi1, t1);
    AmbiguousJoint out;
    out.t1 = t1;
    out.t2 = t2;
    out.epsilon = m.epsilon;
    for (int alpha : {-1, +1}) {
        auto branch = psi1;
        const double wp = std::sqrt(m.c[sidx(alpha)][1]);
        const double wm = std::sqrt(m.c[sidx(alpha)][0]);
        for (std::size_t j = 0; j < branch.size(); ++j) {
            const double x = branch.spec.x(j);
            const double w = (x > 0.0) ? wp : (x < 0.0 ? wm : 0.5 * (wp + wm));
            branch.amp[j] *= w;
        }
        states::evolve_free_in_place(branch, t2 - t1);
        for (int s2 : {-1, +1}) {
            auto proj = branch;
            states::apply_theta(proj, s2);
            out.at(alpha, s2) = states::norm_squared(proj);
        }
    }
    return out;
}

TwoTimeTable infer_two_time(const AmbiguousJoint& joint, const AmbiguityModel& m) {
    TwoTimeTable t;
    t.kind = TableKind::inferred;
    t.t1 = joint.t1;
    t.t2 = joint.t2;
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1}) {
            double v = 0.0;
            for (int alpha : {-1, +1})
                v += m.d[sidx(s1)][sidx(alpha)] * joint.at(alpha, s2);
            t.at(s1, s2) = v;
        }
    return t;
}

RecoveredTables recover_q_two_strengths(const WavepacketState& s, double t1, double t2,
                                        double eps1, double eps2) {
    const auto m1 = AmbiguityModel::make(eps1);
    const auto m2 = AmbiguityModel::make(eps2);
    const double r1 = std::sqrt(1.0 - eps1 * eps1);
    const double r2 = std::sqrt(1.0 - eps2 * eps2);
    // rows: inferred_i = (1 - r_i) p12 + r_i q; infinity-norm condition
    // number of [[1-r1, r1], [1-r2, r2]]
    const double det = r2 - r1;
    const double cond = std::max(r1 + r2, 2.0 - r1 - r2) / std::abs(det);
    if (!(std::abs(det) > 0.0) || cond > 1e2)
        throw IllConditionedError("recover_q_two_strengths: strengths too close");
    const auto spec = states::auto_grid(s, t2);
    const auto j1 = ambiguous_joint(s, t1, t2, m1, spec);
    const auto j2 = ambiguous_joint(s, t1, t2, m2, spec);
    const auto i1 = infer_two_time(j1, m1);
    const auto i2 = infer_two_time(j2, m2);
    RecoveredTables out;
    out.q.kind = TableKind::quasi;
    out.p12.kind = TableKind::sequential;
    out.q.t1 = out.p12.t1 = t1;
    out.q.t2 = out.p12.t2 = t2;
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1}) {
            const double a = i1.at(s1, s2);
            const double b = i2.at(s1, s2);
            // solve (1-r1) p + r1 q = a ; (1-r2) p + r2 q = b
            const double p = (r2 * a - r1 * b) / det;
            const double q = ((1.0 - r1) * b - (1.0 - r2) * a) / det;
            out.p12.at(s1, s2) = p;
            out.q.at(s1, s2) = q;
        }
    return out;
}

AmbiguousJoint sample_records(const WavepacketState& s, double t1, double t2,
                              const AmbiguityModel& m, std::int64_t n, std::uint64_t seed) {
    return sample_records_from_joint(ambiguous_joint(s, t1, t2, m), n, seed);
}

AmbiguousJoint sample_records_from_joint(const AmbiguousJoint& exact, std::int64_t n,
                                         std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_records: n must be >= 1");
    // inverse CDF over the four cells in fixed (alpha, s2) order
    double cdf[4];
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        acc += exact.v[k / 2][k % 2];
        cdf[k] = acc;
    }
    std::mt19937_64 gen(seed);
    std::int64_t counts[4] = {0, 0, 0, 0};
    for (std::int64_t i = 0; i < n; ++i) {
        const double u = num::uniform01(gen) * acc;
        int k = 0;
        while (k < 3 && u >= cdf[k]) ++k;
        ++counts[k];
    }
    AmbiguousJoint out = exact;
    out.n_samples = n;
    for (int k = 0; k < 4; ++k)
        out.v[k / 2][k % 2] = static_cast<double>(counts[k]) / static_cast<double>(n);
    return out;
}

} // namespace qarrival::ambiguous
