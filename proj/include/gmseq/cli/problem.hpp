#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "../error.hpp"
#include "../ideal.hpp"
#include "../module.hpp"
#include "../parse.hpp"

namespace gmseq::cli {

using nlohmann::json;

/// Malformed or inconsistent problem file. `where()` is a JSON pointer.
class InputError : public Error {
public:
    InputError(const std::string& what, std::string where)
        : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Caps on what a problem file may request.
struct Caps {
    std::size_t max_variables = 8;
    unsigned max_grow_cap = 256;
    unsigned max_nmax = 96;
    unsigned max_trials = 1000;
};

struct Problem {
    PolyRing ring;
    Ideal i;
    std::optional<Ideal> j;
    Ideal k;
    bool equidimensional = false;
    std::vector<Ideal> primes;
    /// Task parameters from the file; flags override them.
    json parameters = json::object();
    /// Canonical echo of the input.
    json echo;
};

namespace detail {

/// Integers built in memory are signed; parsed text gives unsigned.
inline bool nonnegative_integer(const json& v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

inline MonomialOrder parse_order(const json& o, const std::string& where) {
    if (o.is_null()) return MonomialOrder::grevlex();
    if (o.is_string()) {
        if (o == "grevlex") return MonomialOrder::grevlex();
        if (o == "lex") return MonomialOrder::lex();
    }
    if (o.is_object() && o.size() == 1 && o.contains("elimination") && detail::nonnegative_integer(o["elimination"]))
        return MonomialOrder::elimination(o["elimination"].get<std::size_t>());
    throw InputError("order must be \"grevlex\", \"lex\" or {\"elimination\": k}", where);
}

inline json order_json(const MonomialOrder& o) {
    switch (o.kind()) {
    case MonomialOrder::Kind::grevlex: return "grevlex";
    case MonomialOrder::Kind::lex: return "lex";
    case MonomialOrder::Kind::elimination: return json{{"elimination", o.block()}};
    }
    return "grevlex";
}

inline Ideal parse_ideal(const json& gens, const PolyRing& ring, const std::string& where) {
    if (!gens.is_array()) throw InputError("ideal must be an array of polynomial strings", where);
    std::vector<Polynomial> ps;
    for (std::size_t s = 0; s < gens.size(); ++s) {
        const std::string at = where + "/" + std::to_string(s);
        if (!gens[s].is_string()) throw InputError("generator must be a string", at);
        try {
            ps.push_back(parse_polynomial(gens[s].get<std::string>(), ring));
        } catch (const ParseError& e) {
            throw InputError(e.what(), at);
        }
    }
    return Ideal(ring, std::move(ps));
}

inline json ideal_json(const Ideal& i) {
    json a = json::array();
    for (const auto& g : i.generators()) a.push_back(g.to_string());
    return a;
}

inline void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw InputError("unknown key \"" + it.key() + "\"", where);
    }
}

} // namespace detail

/// Reads a problem document; `char_override` replaces the file's
/// characteristic when set.
inline Problem parse_problem(const json& doc, std::optional<std::uint64_t> char_override = std::nullopt, const Caps& caps = {}) {
    using detail::parse_ideal;
    if (!doc.is_object()) throw InputError("problem must be a JSON object", "");
    detail::reject_unknown(doc, {"schema", "ring", "ideals", "assertions", "primes", "parameters"}, "");
    if (!doc.contains("schema") || doc["schema"] != 1) throw InputError("schema must be 1", "/schema");
    if (!doc.contains("ring") || !doc["ring"].is_object()) throw InputError("missing ring object", "/ring");
    const json& r = doc["ring"];
    detail::reject_unknown(r, {"variables", "characteristic", "order"}, "/ring");
    if (!r.contains("variables") || !r["variables"].is_array()) throw InputError("variables must be an array", "/ring/variables");
    std::vector<std::string> vars;
    for (const auto& v : r["variables"]) {
        if (!v.is_string()) throw InputError("variable names must be strings", "/ring/variables");
        vars.push_back(v.get<std::string>());
    }
    if (vars.size() > caps.max_variables)
        throw InputError("more than " + std::to_string(caps.max_variables) + " variables", "/ring/variables");
    std::uint64_t ch = 0;
    if (r.contains("characteristic")) {
        if (!detail::nonnegative_integer(r["characteristic"])) throw InputError("characteristic must be a nonnegative integer", "/ring/characteristic");
        ch = r["characteristic"].get<std::uint64_t>();
    }
    if (char_override) ch = *char_override;
    const MonomialOrder order = detail::parse_order(r.contains("order") ? r["order"] : json(), "/ring/order");
    std::optional<PolyRing> ring;
    try {
        ring.emplace(vars, ch, order);
    } catch (const PreconditionError& e) {
        throw InputError(e.what(), "/ring");
    }

    if (!doc.contains("ideals") || !doc["ideals"].is_object()) throw InputError("missing ideals object", "/ideals");
    const json& ids = doc["ideals"];
    detail::reject_unknown(ids, {"I", "J", "K"}, "/ideals");
    if (!ids.contains("I")) throw InputError("ideal I is required", "/ideals/I");
    Problem p{*ring, parse_ideal(ids["I"], *ring, "/ideals/I"), std::nullopt, Ideal(*ring), false, {}, json::object(), json()};
    if (p.i.is_zero()) throw InputError("I must be nonzero", "/ideals/I");
    if (ids.contains("J")) p.j = parse_ideal(ids["J"], *ring, "/ideals/J");
    if (ids.contains("K")) p.k = parse_ideal(ids["K"], *ring, "/ideals/K");
    if (p.k.is_unit()) throw InputError("K must be a proper ideal", "/ideals/K");
    if (!p.k.is_homogeneous()) throw InputError("K must be homogeneous", "/ideals/K");
    if (!p.i.is_homogeneous()) throw InputError("I must be homogeneous", "/ideals/I");
    if (p.i.is_unit()) throw InputError("I must be proper", "/ideals/I");
    if (p.j && !p.j->is_homogeneous()) throw InputError("J must be homogeneous", "/ideals/J");

    if (doc.contains("assertions")) {
        const json& a = doc["assertions"];
        if (!a.is_object()) throw InputError("assertions must be an object", "/assertions");
        detail::reject_unknown(a, {"equidimensional"}, "/assertions");
        if (a.contains("equidimensional")) {
            if (!a["equidimensional"].is_boolean()) throw InputError("equidimensional must be a boolean", "/assertions/equidimensional");
            p.equidimensional = a["equidimensional"].get<bool>();
        }
    }
    if (doc.contains("primes")) {
        const json& ps = doc["primes"];
        if (!ps.is_array()) throw InputError("primes must be an array of ideals", "/primes");
        for (std::size_t s = 0; s < ps.size(); ++s) {
            Ideal q = parse_ideal(ps[s], *ring, "/primes/" + std::to_string(s));
            if (!q.is_homogeneous() || q.is_unit()) throw InputError("prime must be homogeneous and proper", "/primes/" + std::to_string(s));
            p.primes.push_back(std::move(q));
        }
    }
    if (doc.contains("parameters")) {
        if (!doc["parameters"].is_object()) throw InputError("parameters must be an object", "/parameters");
        p.parameters = doc["parameters"];
        detail::reject_unknown(p.parameters, {"umax", "vmax", "window_width", "grow_cap", "nmax", "seed", "trials", "validate_localizations"},
                               "/parameters");
        for (auto it = p.parameters.begin(); it != p.parameters.end(); ++it) {
            const bool flag = it.key() == "validate_localizations";
            if (flag ? !it->is_boolean() : !detail::nonnegative_integer(*it))
                throw InputError(flag ? "must be a boolean" : "must be a nonnegative integer", "/parameters/" + it.key());
        }
        auto cap = [&](const char* key, unsigned limit) {
            if (p.parameters.contains(key) && p.parameters[key].get<std::uint64_t>() > limit)
                throw InputError("exceeds cap " + std::to_string(limit), std::string("/parameters/") + key);
        };
        cap("grow_cap", caps.max_grow_cap);
        cap("nmax", caps.max_nmax);
        cap("trials", caps.max_trials);
    }

    json ideals{{"I", detail::ideal_json(p.i)}, {"K", detail::ideal_json(p.k)}};
    if (p.j) ideals["J"] = detail::ideal_json(*p.j);
    json primes = json::array();
    for (const auto& q : p.primes) primes.push_back(detail::ideal_json(q));
    p.echo = {{"ring", {{"variables", vars}, {"characteristic", ch}, {"order", detail::order_json(order)}}},
              {"ideals", ideals},
              {"assertions", {{"equidimensional", p.equidimensional}}},
              {"primes", primes}};
    return p;
}

inline Problem parse_problem_text(const std::string& text, std::optional<std::uint64_t> char_override = std::nullopt, const Caps& caps = {}) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what(), "byte " + std::to_string(e.byte));
    }
    return parse_problem(doc, char_override, caps);
}

inline CyclicModule module_of(const Problem& p) { return CyclicModule(p.k, p.equidimensional); }

} // namespace gmseq::cli
