#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../localization.hpp"
#include "../multiplicity.hpp"
#include "../reduction.hpp"

namespace gmseq::cli {

using nlohmann::json;

inline constexpr const char* kEngineVersion = "1.0.0";

inline json to_json(const MultiplicitySequence& s) {
    return {{"c", s.c},
            {"d", s.d},
            {"table", {{"umax", s.table_u}, {"vmax", s.table_v}}},
            {"window", {{"u", {s.window.u_lo, s.window.u_hi}}, {"v", {s.window.v_lo, s.window.v_hi}}}}};
}

inline json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(); }

inline json to_json(const StarResult& s, const PolyRing& ring) {
    json j{{"status", to_string(s.status)}, {"reason", s.reason}};
    if (s.witness) j["witness"] = MonomialPrime{*s.witness}.to_string(ring);
    return j;
}

inline json to_json(const Diagnostics& g, const PolyRing& ring) {
    return {{"d", g.d},
            {"q", g.q},
            {"analytic_spread", optional_int(g.ell)},
            {"het", optional_int(g.het)},
            {"star", to_json(g.star, ring)},
            {"finite_colength", g.finite_colength},
            {"consistent", g.consistent}};
}

inline json to_json(const FormulaReport& r, const PolyRing& ring) {
    json terms = json::array();
    for (const auto& t : r.terms) {
        json lambda = json::array();
        for (const auto& c : t.lambda) lambda.push_back({{"prime", c.prime}, {"c0", c.c0}, {"degree", c.degree}});
        json term{{"k", t.k}, {"lhs", t.lhs}, {"rhs", t.rhs}, {"verdict", to_string(t.verdict)}, {"lambda", lambda}, {"support", t.support}};
        if (!t.reason.empty()) term["reason"] = t.reason;
        terms.push_back(std::move(term));
    }
    return {{"lhs", to_json(r.lhs)}, {"star", to_json(r.star, ring)}, {"star_ok", r.star_ok}, {"terms", terms}};
}

inline json to_json(const DirectVerdict& v) {
    return {{"reduced_at", v.reduced_at ? json(*v.reduced_at) : json()}, {"n_max", v.n_max}};
}

inline json to_json(const ReductionReport& r) {
    return {{"contained", r.contained},
            {"direct", to_json(r.direct)},
            {"sequences", {{"I", to_json(r.seq_i)}, {"J", to_json(r.seq_j)}}},
            {"het", optional_int(r.het)},
            {"equidimensional", r.equidimensional},
            {"verdict", to_string(r.verdict)},
            {"basis", r.basis},
            {"consistent", r.consistent}};
}

inline json to_json(const Evidence& e) { return {{"check", e.check}, {"passed", e.passed}, {"detail", e.detail}}; }

inline json to_json(const SuperficialCandidate& c) {
    json ev = json::array();
    for (const auto& e : c.evidence) ev.push_back(to_json(e));
    return {{"element", c.element.to_string()},
            {"coefficients", c.coefficients},
            {"trial", c.trial},
            {"c_exponent", c.c_exponent},
            {"evidence", ev}};
}

/// Column-aligned text rendering of a report.
class TextTable {
public:
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    std::string render() const {
        std::vector<std::size_t> w;
        for (const auto& r : rows_)
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (w.size() <= c) w.push_back(0);
                w[c] = std::max(w[c], r[c].size());
            }
        std::ostringstream os;
        for (const auto& r : rows_) {
            std::string line;
            for (std::size_t c = 0; c < r.size(); ++c) {
                std::string cell = r[c];
                if (c + 1 < r.size()) cell.resize(w[c] + 2, ' ');
                line += cell;
            }
            os << line << '\n';
        }
        return os.str();
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

inline std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    return v.dump();
}

inline void flatten(const json& v, const std::string& prefix, TextTable& t) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) flatten(*it, prefix.empty() ? it.key() : prefix + "." + it.key(), t);
    } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
        for (std::size_t s = 0; s < v.size(); ++s) flatten(v[s], prefix + "[" + std::to_string(s) + "]", t);
    } else if (v.is_array()) {
        std::string s = "(";
        for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + scalar_text(v[k]);
        t.row({prefix, s + ")"});
    } else {
        t.row({prefix, scalar_text(v)});
    }
}

/// Key/value table of every leaf of the report, in key order.
inline std::string render_table(const json& report) {
    TextTable t;
    flatten(report, "", t);
    return t.render();
}

} // namespace gmseq::cli
