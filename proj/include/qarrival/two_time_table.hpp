#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace qarrival::twotime {

enum class TableKind { quasi, sequential, inferred };

const char* to_string(TableKind k);
TableKind table_kind_from_string(const std::string& s);

inline int sidx(int s) { return s > 0 ? 1 : 0; }

/// Four real numbers indexed by (s1, s2) in {-1,+1}^2, plus the time
/// pair they refer to. Entries sum to 1 for any of the three kinds.
struct TwoTimeTable {
    double t1 = 0.0;
    double t2 = 0.0;
    TableKind kind = TableKind::quasi;
    double v[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

    double& at(int s1, int s2) { return v[sidx(s1)][sidx(s2)]; }
    double at(int s1, int s2) const { return v[sidx(s1)][sidx(s2)]; }

    double sum() const { return v[0][0] + v[0][1] + v[1][0] + v[1][1]; }
    double min_entry() const;

    /// marginal over s2 (first) / s1 (second)
    double marginal_s1(int s1) const { return v[sidx(s1)][0] + v[sidx(s1)][1]; }
    double marginal_s2(int s2) const { return v[0][sidx(s2)] + v[1][sidx(s2)]; }

    nlohmann::json to_json() const;
    static TwoTimeTable from_json(const nlohmann::json& j);
};

/// Moment representation: table = (1/4)(1 + <Q1> s1 + <Q2> s2 + C12 s1 s2).
/// For a sequential table the s2 moment is the disturbed mean <Q2^(1)>,
/// which moments() mirrors into q2_disturbed.
struct MomentSet {
    double q1 = 0.0;
    double q2 = 0.0;
    double c12 = 0.0;
    std::optional<double> q2_disturbed;
};

MomentSet moments(const TwoTimeTable& t);
TwoTimeTable table_from_moments(const MomentSet& m, TableKind kind, double t1, double t2);

} // namespace qarrival::twotime
