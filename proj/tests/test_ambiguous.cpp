#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qarrival/ambiguous.hpp"
#include "qarrival/rng.hpp"

using namespace qarrival::ambiguous;
using qarrival::states::GaussianPacket;
using qarrival::states::WavepacketState;
using qarrival::twotime::Complex;
using qarrival::twotime::GridEngine;
using qarrival::twotime::moments;
namespace num = qarrival::num;

namespace {

// slow counter-movers with strong branch interference at t2
WavepacketState overlap_state(double theta = M_PI / 3, double phi = M_PI / 8) {
    const double L = 1.63, p0 = 0.05;
    return WavepacketState::superposition(
        {std::polar(std::cos(phi), theta), Complex(std::sin(phi), 0.0)},
        {GaussianPacket{L, 1.0, -p0, 0.0}, GaussianPacket{-L, 1.0, p0, 0.0}});
}

constexpr double kT2 = 1.63 / 0.05;

} // namespace

TEST_CASE("model matrices and invariants") {
    const auto m = AmbiguityModel::make(0.6);
    // columns of c sum to one
    for (int s : {0, 1}) CHECK(m.c[0][s] + m.c[1][s] == doctest::Approx(1.0).epsilon(1e-15));
    // the fixed parametric form
    CHECK(m.c[1][1] == doctest::Approx(0.8));
    CHECK(m.c[1][0] == doctest::Approx(0.2));
    CHECK(m.c[0][0] == doctest::Approx(0.8));
    CHECK(m.c[0][1] == doctest::Approx(0.2));
    // d is the left inverse: sum_alpha d[s][alpha] c[alpha][s'] = delta
    for (int s : {0, 1})
        for (int sp : {0, 1}) {
            double v = 0.0;
            for (int a : {0, 1}) v += m.d[s][a] * m.c[a][sp];
            CHECK(v == doctest::Approx(s == sp ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
        }
    CHECK_THROWS_AS((void)AmbiguityModel::make(0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)AmbiguityModel::make(1.2), std::invalid_argument);
}

TEST_CASE("epsilon = 1 reduces to the sequential measurement") {
    auto s = overlap_state();
    const auto spec = qarrival::states::auto_grid(s, kT2);
    GridEngine eng(s, 0.0, kT2, spec);
    const auto p12 = eng.sequential();
    const auto m = AmbiguityModel::make(1.0);
    const auto joint = ambiguous_joint(s, 0.0, kT2, m, spec);
    const auto inf = infer_two_time(joint, m);
    for (int a : {-1, +1})
        for (int s2 : {-1, +1}) {
            CHECK(joint.at(a, s2) == doctest::Approx(p12.at(a, s2)).epsilon(1e-12).scale(1.0));
            CHECK(inf.at(a, s2) == doctest::Approx(p12.at(a, s2)).epsilon(1e-12).scale(1.0));
        }
}

TEST_CASE("weak limit: the joint forgets alpha") {
    auto s = overlap_state();
    const double eps = 1e-6;
    const auto spec = qarrival::states::auto_grid(s, kT2);
    GridEngine eng(s, 0.0, kT2, spec);
    const auto m = AmbiguityModel::make(eps);
    const auto joint = ambiguous_joint(s, 0.0, kT2, m, spec);
    for (int s2 : {-1, +1}) {
        const double half_p2 = 0.5 * eng.single_time_prob(2, s2);
        for (int a : {-1, +1}) CHECK(std::abs(joint.at(a, s2) - half_p2) < 3e-6);
    }
}

TEST_CASE("joint equals its p12 + decoherence reconstruction") {
    auto s = overlap_state();
    const auto spec = qarrival::states::auto_grid(s, kT2);
    GridEngine eng(s, 0.0, kT2, spec);
    const auto p12 = eng.sequential();
    for (double eps : {0.35, 0.77}) {
        const auto m = AmbiguityModel::make(eps);
        const auto joint = ambiguous_joint(s, 0.0, kT2, m, spec);
        for (int a : {-1, +1})
            for (int s2 : {-1, +1}) {
                double ref = 0.0;
                for (int s1 : {-1, +1})
                    ref += m.c[qarrival::twotime::sidx(a)][qarrival::twotime::sidx(s1)] *
                           p12.at(s1, s2);
                ref += 2.0 * std::sqrt(m.c[qarrival::twotime::sidx(a)][0] *
                                       m.c[qarrival::twotime::sidx(a)][1]) *
                       eng.decoherence(+1, -1, s2).real();
                CHECK(joint.at(a, s2) == doctest::Approx(ref).epsilon(1e-11).scale(1.0));
            }
        CHECK(joint.sum() == doctest::Approx(1.0).epsilon(1e-10));
        for (int a : {-1, +1})
            for (int s2 : {-1, +1}) CHECK(joint.at(a, s2) >= -1e-12);
    }
}

TEST_CASE("interpolation law between p12 and q") {
    auto s = overlap_state();
    const auto spec = qarrival::states::auto_grid(s, kT2);
    GridEngine eng(s, 0.0, kT2, spec);
    const auto q = eng.quasi();
    const auto p12 = eng.sequential();
    for (double eps : {0.2, 0.5, 0.8, 1.0}) {
        const auto m = AmbiguityModel::make(eps);
        const auto inf = infer_two_time(ambiguous_joint(s, 0.0, kT2, m, spec), m);
        const double r = std::sqrt(1.0 - eps * eps);
        for (int s1 : {-1, +1})
            for (int s2 : {-1, +1}) {
                const double ref = (1.0 - r) * p12.at(s1, s2) + r * q.at(s1, s2);
                CHECK(inf.at(s1, s2) == doctest::Approx(ref).epsilon(1e-7).scale(1.0));
            }
        // sum rules hold up to the (1-r)-weighted sequential violation
        for (int s2 : {-1, +1}) {
            const double ref = (1.0 - r) * eng.measured_prob_t2(s2) +
                               r * eng.single_time_prob(2, s2);
            CHECK(inf.marginal_s2(s2) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
        }
    }
    // eps = 0.6 spot check of the mixing weights
    const auto m6 = AmbiguityModel::make(0.6);
    const auto inf6 = infer_two_time(ambiguous_joint(s, 0.0, kT2, m6, spec), m6);
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1})
            CHECK(inf6.at(s1, s2) ==
                  doctest::Approx(0.2 * p12.at(s1, s2) + 0.8 * q.at(s1, s2))
                      .epsilon(1e-8)
                      .scale(1.0));
}

TEST_CASE("near-weak measurement already returns q") {
    auto s = overlap_state();
    const auto spec = qarrival::states::auto_grid(s, kT2);
    GridEngine eng(s, 0.0, kT2, spec);
    const auto q = eng.quasi();
    const double eps = 1e-3;
    const auto m = AmbiguityModel::make(eps);
    const auto inf = infer_two_time(ambiguous_joint(s, 0.0, kT2, m, spec), m);
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1})
            CHECK(std::abs(inf.at(s1, s2) - q.at(s1, s2)) < 5e-7);
}

TEST_CASE("two-strength recovery") {
    auto s = overlap_state();
    const auto spec = qarrival::states::auto_grid(s, kT2);
    GridEngine eng(s, 0.0, kT2, spec);
    const auto q = eng.quasi();
    const auto p12 = eng.sequential();
    const auto rec = recover_q_two_strengths(s, 0.0, kT2, 1.0, 0.5);
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1}) {
            CHECK(rec.q.at(s1, s2) == doctest::Approx(q.at(s1, s2)).epsilon(1e-7).scale(1.0));
            CHECK(rec.p12.at(s1, s2) ==
                  doctest::Approx(p12.at(s1, s2)).epsilon(1e-7).scale(1.0));
        }
    CHECK(rec.q.min_entry() >= -0.125 - 1e-8);
    CHECK_THROWS_AS((void)recover_q_two_strengths(s, 0.0, kT2, 0.9, 0.899),
                    IllConditionedError);
}

TEST_CASE("inference is linear in the state") {
    // mixture of two states: inferred table of the mixture equals the
    // mixture of inferred tables
    auto a = overlap_state(0.4, 0.5);
    auto b = overlap_state(2.2, 1.0);
    const auto m = AmbiguityModel::make(0.45);
    const auto spec_a = qarrival::states::auto_grid(a, kT2);
    const auto ja = ambiguous_joint(a, 0.0, kT2, m, spec_a);
    const auto jb = ambiguous_joint(b, 0.0, kT2, m, spec_a);
    AmbiguousJoint jmix = ja;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) jmix.v[i][j] = 0.4 * ja.v[i][j] + 0.6 * jb.v[i][j];
    const auto inf_mix = infer_two_time(jmix, m);
    const auto ia = infer_two_time(ja, m);
    const auto ib = infer_two_time(jb, m);
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1})
            CHECK(inf_mix.at(s1, s2) ==
                  doctest::Approx(0.4 * ia.at(s1, s2) + 0.6 * ib.at(s1, s2))
                      .epsilon(1e-12)
                      .scale(1.0));
}

TEST_CASE("sampling: determinism, one-hot, and binomial bands") {
    auto s = overlap_state();
    const auto m = AmbiguityModel::make(0.6);
    const auto exact = ambiguous_joint(s, 0.0, kT2, m);
    const auto one = sample_records_from_joint(exact, 1, 99);
    int hot = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (one.v[i][j] == 1.0) ++hot;
    CHECK(hot == 1);
    CHECK(one.sum() == doctest::Approx(1.0));
    const auto s1 = sample_records_from_joint(exact, 20000, 1234);
    const auto s2 = sample_records_from_joint(exact, 20000, 1234);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(s1.v[i][j] == s2.v[i][j]);
    const std::int64_t n = 1000000;
    const auto emp = sample_records_from_joint(exact, n, 42);
    CHECK(emp.n_samples.value() == n);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double p = exact.v[i][j];
            const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
            CHECK(std::abs(emp.v[i][j] - p) < 5.0 * sigma + 1.0 / static_cast<double>(n));
        }
}

TEST_CASE("joint json includes epsilon and n_samples") {
    AmbiguousJoint j;
    j.epsilon = 0.3;
    j.v[1][0] = 0.25;
    auto js = j.to_json();
    CHECK(js.at("epsilon").get<double>() == 0.3);
    CHECK(js.at("pm").get<double>() == 0.25);
    CHECK(!js.contains("n_samples"));
    j.n_samples = 77;
    CHECK(j.to_json().at("n_samples").get<std::int64_t>() == 77);
}
