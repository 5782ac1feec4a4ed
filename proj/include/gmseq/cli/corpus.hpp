#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "../error.hpp"
#include "../monomial_ideal.hpp"
#include "../multiplicity.hpp"
#include "../reduction.hpp"

namespace gmseq::cli {

using nlohmann::json;

enum class CorpusKind {
    /// I with het_M(I) > 0; K is zero or a random monomial ideal of dim >= 1.
    ideal,
    /// As `ideal`, plus J = I + one monomial of the degree of a generator of I.
    pair,
    /// J random, I a subset of J's generators over which J is integral.
    reduction_pair,
    /// m-primary I with K = 0.
    m_primary,
};

struct CorpusOptions {
    std::size_t count = 10;
    std::size_t nvars = 3;
    unsigned max_degree = 3;
    std::uint64_t seed = 0;
    CorpusKind kind = CorpusKind::ideal;
    std::size_t max_nvars = 4;
    unsigned max_max_degree = 5;
};

namespace detail {

inline std::uint64_t draw_range(std::mt19937_64& g, std::uint64_t lo, std::uint64_t hi) {
    return lo + gmseq::detail::uniform_below(g, hi - lo + 1);
}

/// Monomial of total degree in [min_degree, max_degree]; each unit of
/// degree goes to a uniformly drawn variable.
inline Monomial random_monomial(std::mt19937_64& g, std::size_t n, unsigned max_degree, unsigned min_degree = 1) {
    const unsigned deg = static_cast<unsigned>(draw_range(g, min_degree, max_degree));
    Monomial m(n);
    for (unsigned s = 0; s < deg; ++s) {
        const std::size_t v = draw_range(g, 0, n - 1);
        m.set(v, m[v] + 1);
    }
    return m;
}

inline Monomial random_monomial_of_degree(std::mt19937_64& g, std::size_t n, unsigned deg) {
    return random_monomial(g, n, deg, deg);
}

inline std::vector<Monomial> random_generators(std::mt19937_64& g, std::size_t n, unsigned max_degree) {
    const std::size_t count = draw_range(g, 1, n + 1);
    std::vector<Monomial> gens;
    for (std::size_t s = 0; s < count; ++s) gens.push_back(random_monomial(g, n, max_degree));
    return gens;
}

inline json monomials_json(const PolyRing& ring, const std::vector<Monomial>& ms) {
    json a = json::array();
    for (const auto& m : ms) a.push_back(Polynomial::monomial(ring, m).to_string());
    return a;
}

inline bool equidimensional(const MonomialIdeal& k) {
    if (k.is_zero()) return true;
    const auto primes = k.minimal_primes();
    for (auto p : primes)
        if (mask_size(p) != mask_size(primes.front())) return false;
    return true;
}

/// I not inside any minimal prime of K, which is exactly het_M(I) > 0.
inline bool positive_height(const MonomialIdeal& i, const MonomialIdeal& k) {
    if (k.is_zero()) return true;
    for (auto p : k.minimal_primes()) {
        bool inside = true;
        for (const auto& gi : i.generators()) inside = inside && (gi.support_mask() & p) != 0;
        if (inside) return false;
    }
    return true;
}

inline bool integral_square(const Monomial& m, const std::vector<Monomial>& rest, std::size_t n) {
    const MonomialIdeal r(n, rest);
    return (r * r).contains(m * m);
}

} // namespace detail

inline std::vector<std::string> default_variables(std::size_t n) {
    static const char* names[] = {"x", "y", "z", "w"};
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(names[i]);
    return v;
}

/// Deterministic problem documents; problem s depends only on (seed, s).
inline std::vector<json> generate_corpus(const CorpusOptions& opt) {
    if (opt.nvars < 1 || opt.nvars > opt.max_nvars) throw PreconditionError("corpus variable count outside [1, " + std::to_string(opt.max_nvars) + "]");
    if (opt.max_degree < 1 || opt.max_degree > opt.max_max_degree)
        throw PreconditionError("corpus degree outside [1, " + std::to_string(opt.max_max_degree) + "]");
    const std::size_t n = opt.nvars;
    const PolyRing ring(default_variables(n));
    std::vector<json> out;
    for (std::size_t s = 0; s < opt.count; ++s) {
        auto g = gmseq::detail::trial_stream(opt.seed, static_cast<unsigned>(s));
        json ideals;
        bool equidim = true;
        for (unsigned attempt = 0;; ++attempt) {
            if (attempt == 1000) throw ResourceLimit("corpus generator could not satisfy its constraints");
            std::vector<Monomial> ig;
            MonomialIdeal k(n);
            if (opt.kind == CorpusKind::m_primary) {
                for (std::size_t v = 0; v < n; ++v) ig.push_back(Monomial::variable_power(n, v, static_cast<unsigned>(detail::draw_range(g, 1, opt.max_degree))));
                const std::size_t extra = detail::draw_range(g, 0, 2);
                for (std::size_t e = 0; e < extra; ++e) ig.push_back(detail::random_monomial(g, n, opt.max_degree));
                ideals = {{"I", detail::monomials_json(ring, MonomialIdeal(n, ig).generators())}, {"K", json::array()}};
                break;
            }
            if (opt.kind == CorpusKind::reduction_pair) {
                const unsigned deg = static_cast<unsigned>(detail::draw_range(g, 1, opt.max_degree));
                std::vector<Monomial> jg;
                for (std::size_t v = 0; v < n; ++v)
                    if (detail::draw_range(g, 0, 3) != 0) jg.push_back(Monomial::variable_power(n, v, deg));
                const std::size_t extra = detail::draw_range(g, 1, n + 1);
                for (std::size_t e = 0; e < extra; ++e) jg.push_back(detail::random_monomial_of_degree(g, n, deg));
                jg = MonomialIdeal(n, jg).generators();
                std::vector<Monomial> kept = jg;
                for (std::size_t t = 0; t < kept.size();) {
                    std::vector<Monomial> rest(kept);
                    rest.erase(rest.begin() + static_cast<long>(t));
                    if (!rest.empty() && detail::integral_square(kept[t], rest, n))
                        kept = std::move(rest);
                    else
                        ++t;
                }
                ideals = {{"I", detail::monomials_json(ring, kept)}, {"J", detail::monomials_json(ring, jg)}, {"K", json::array()}};
                break;
            }
            ig = detail::random_generators(g, n, opt.max_degree);
            if (detail::draw_range(g, 0, 1) == 1) {
                std::vector<Monomial> kg{detail::random_monomial(g, n, opt.max_degree)};
                if (detail::draw_range(g, 0, 1) == 1) kg.push_back(detail::random_monomial(g, n, opt.max_degree));
                k = MonomialIdeal(n, kg);
                if (k.dimension() < 1) continue;
            }
            const MonomialIdeal im(n, ig);
            if (!detail::positive_height(im, k)) continue;
            equidim = detail::equidimensional(k);
            ideals = {{"I", detail::monomials_json(ring, im.generators())}, {"K", detail::monomials_json(ring, k.generators())}};
            if (opt.kind == CorpusKind::pair) {
                const auto& gens = im.generators();
                const unsigned deg = gens[detail::draw_range(g, 0, gens.size() - 1)].degree();
                const Monomial extra = detail::random_monomial_of_degree(g, n, deg);
                if (im.contains(extra)) continue;
                std::vector<Monomial> jg = gens;
                jg.push_back(extra);
                ideals["J"] = detail::monomials_json(ring, MonomialIdeal(n, jg).generators());
            }
            break;
        }
        out.push_back({{"schema", 1},
                       {"ring", {{"variables", ring.variables()}, {"characteristic", 0}, {"order", "grevlex"}}},
                       {"ideals", ideals},
                       {"assertions", {{"equidimensional", equidim}}}});
    }
    return out;
}

} // namespace gmseq::cli
