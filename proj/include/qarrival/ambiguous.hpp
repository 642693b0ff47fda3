#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include <json.hpp>

#include "qarrival/two_time_engine.hpp"

namespace qarrival::ambiguous {

using states::GridSpec;
using states::WavepacketState;
using twotime::TableKind;
using twotime::TwoTimeTable;
using twotime::sidx;

/// POVM pair F_alpha = sum_s c[alpha][s] P_s with the one-parameter
/// conditional matrix
///   c = 1/2 [[1+eps, 1-eps], [1-eps, 1+eps]]
/// and its inverse d. eps = 1 is projective, eps -> 0 is weak; eps = 0
/// itself is excluded (d is singular there).
struct AmbiguityModel {
    double epsilon = 1.0;
    double c[2][2] = {{0, 0}, {0, 0}}; // c[alpha][s]
    double d[2][2] = {{0, 0}, {0, 0}}; // d[s][alpha]

    static AmbiguityModel make(double eps);
};

/// Joint distribution over (alpha, s2): an ambiguous measurement at t1
/// followed by a projective one at t2.
struct AmbiguousJoint {
    double t1 = 0.0, t2 = 0.0;
    double epsilon = 1.0;
    double v[2][2] = {{0, 0}, {0, 0}}; // [alpha][s2]
    std::optional<std::int64_t> n_samples;

    double& at(int alpha, int s2) { return v[sidx(alpha)][sidx(s2)]; }
    double at(int alpha, int s2) const { return v[sidx(alpha)][sidx(s2)]; }
    double sum() const { return v[0][0] + v[0][1] + v[1][0] + v[1][1]; }
    double marginal_s2(int s2) const { return v[0][sidx(s2)] + v[1][sidx(s2)]; }

    nlohmann::json to_json() const;
};

struct IllConditionedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// p(alpha, s2) = <psi| M_alpha(t1) P_{s2}(t2) M_alpha(t1) |psi>, built
/// by applying the smeared mask sqrt(c[alpha][sign x]) on the grid.
AmbiguousJoint ambiguous_joint(const WavepacketState& s, double t1, double t2,
                               const AmbiguityModel& m);
AmbiguousJoint ambiguous_joint(const WavepacketState& s, double t1, double t2,
                               const AmbiguityModel& m, const GridSpec& spec);

/// Inversion through d: the inferred two-time table, which equals
/// (1 - sqrt(1-eps^2)) p12 + sqrt(1-eps^2) q.
TwoTimeTable infer_two_time(const AmbiguousJoint& joint, const AmbiguityModel& m);

struct RecoveredTables {
    TwoTimeTable q;
    TwoTimeTable p12;
};

/// Two ambiguous measurements of different strengths pin down q and p12
/// from the 2x2 linear system of inferred tables. Throws
/// IllConditionedError when the system's condition number exceeds 1e2
/// (eps1 too close to eps2).
RecoveredTables recover_q_two_strengths(const WavepacketState& s, double t1, double t2,
                                        double eps1, double eps2);

/// n i.i.d. draws from the exact joint by inverse CDF; deterministic
/// for a fixed seed. Returns empirical frequencies with n_samples set.
AmbiguousJoint sample_records(const WavepacketState& s, double t1, double t2,
                              const AmbiguityModel& m, std::int64_t n, std::uint64_t seed);
AmbiguousJoint sample_records_from_joint(const AmbiguousJoint& exact, std::int64_t n,
                                         std::uint64_t seed);

} // namespace qarrival::ambiguous
