#include "qarrival/two_time_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>



namespace qarrival::twotime {

const char* to_string(TableKind k) {
    switch (k) {
        case TableKind::quasi: return "quasi";
        case TableKind::sequential: return "sequential";
        case TableKind::inferred: return "inferred";
    }
    return "?";
}

TableKind table_kind_from_string(const std::string& s) {
    if (s == "quasi") return TableKind::quasi;
    if (s == "sequential") return TableKind::sequential;
    if (s == "inferred") return TableKind::inferred;
    throw std::invalid_argument("unknown table kind: " + s);
}

double TwoTimeTable::min_entry() const {
    return std::min({v[0][0], v[0][1], v[1][0], v[1][1]});
}

nlohmann::json TwoTimeTable::to_json() const {
    return nlohmann::json{{"mm", v[0][0]}, {"mp", v[0][1]}, {"pm", v[1][0]},
                          {"pp", v[1][1]}, {"kind", to_string(kind)},
                          {"t1", t1},      {"t2", t2}};
}

TwoTimeTable TwoTimeTable::from_json(const nlohmann::json& j) {
    TwoTimeTable t;
    t.v[0][0] = j.at("mm").get<double>();
    t.v[0][1] = j.at("mp").get<double>();
    t.v[1][0] = j.at("pm").get<double>();
    t.v[1][1] = j.at("pp").get<double>();
    t.kind = table_kind_from_string(j.at("kind").get<std::string>());
    t.t1 = j.at("t1").get<double>();
    t.t2 = j.at("t2").get<double>();
    return t;
}

MomentSet moments(const TwoTimeTable& t) {
    MomentSet m;
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1}) {
            const double p = t.at(s1, s2);
            m.q1 += s1 * p;
            m.q2 += s2 * p;
            m.c12 += s1 * s2 * p;
        }
    if (t.kind == TableKind::sequential) m.q2_disturbed = m.q2;
    return m;
}

TwoTimeTable table_from_moments(const MomentSet& m, TableKind kind, double t1, double t2) {
    const double q2 =
        (kind == TableKind::sequential) ? m.q2_disturbed.value_or(m.q2) : m.q2;
    TwoTimeTable t;
    t.kind = kind;
    t.t1 = t1;
    t.t2 = t2;
    for (int s1 : {-1, +1})
        for (int s2 : {-1, +1})
            t.at(s1, s2) = 0.25 * (1.0 + s1 * m.q1 + s2 * q2 + s1 * s2 * m.c12);
    return t;
}

} // namespace qarrival::twotime
