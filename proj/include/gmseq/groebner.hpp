#pragma once

#include <algorithm>
#include <cstddef>
#include <queue>
#include <vector>

#include "error.hpp"
#include "polynomial.hpp"

namespace gmseq {

struct GroebnerOptions {
    /// Upper bound on S-polynomial reductions before ResourceLimit is thrown.
    std::size_t max_reductions = 5'000'000;
};

namespace detail {

struct Reducer {
    const Polynomial* poly;
    VarMask mask;
};

inline const Polynomial* find_reducer(const Monomial& m, const std::vector<Reducer>& reducers) {
    const VarMask ms = m.support_mask();
    for (const auto& r : reducers)
        if ((r.mask & ~ms) == 0 && r.poly->leading_monomial().divides(m)) return r.poly;
    return nullptr;
}

/// Full reduction of f by monic reducers.
inline Polynomial reduce_full(Polynomial f, const std::vector<Reducer>& reducers) {
    std::vector<Term> rest;
    const PolyRing ring = f.ring();
    while (!f.is_zero()) {
        const Term& lt = f.leading_term();
        if (const Polynomial* g = find_reducer(lt.monomial, reducers)) {
            Monomial q = lt.monomial / g->leading_monomial();
            Coefficient c = lt.coefficient;
            f = f - g->times_term(q, c);
        } else {
            rest.push_back(lt);
            auto& t = f.mutable_terms();
            t.erase(t.begin());
        }
    }
    Polynomial r(ring);
    r.mutable_terms() = std::move(rest);
    return r;
}

inline std::vector<Reducer> reducers_of(const std::vector<Polynomial>& basis) {
    std::vector<Reducer> r;
    r.reserve(basis.size());
    for (const auto& g : basis) r.push_back({&g, g.leading_monomial().support_mask()});
    return r;
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
    // Both monic.
    return f.times_term(l / f.leading_monomial(), f.ring().one()) - g.times_term(l / g.leading_monomial(), g.ring().one());
}

} // namespace detail

/// Remainder of f on full division by `basis` (any set of nonzero
/// polynomials; a Groebner basis makes the result canonical).
inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis) {
    std::vector<Polynomial> monic;
    monic.reserve(basis.size());
    for (const auto& g : basis) {
        require_same_ring(f.ring(), g.ring());
        if (!g.is_zero()) monic.push_back(g.monic());
    }
    return detail::reduce_full(f, detail::reducers_of(monic));
}

/// Reduced Groebner basis under the ring's order, by Buchberger's algorithm
/// with the normal selection strategy and the Gebauer-Moeller criteria.
/// Result is monic and sorted by increasing leading monomial; {1} for the
/// unit ideal, empty for the zero ideal.
inline std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& generators, const PolyRing& ring,
                                              const GroebnerOptions& options = {}) {
    const MonomialOrder& ord = ring.order();
    std::vector<Polynomial> polys;
    std::vector<bool> active;

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    auto later = [&](const Pair& a, const Pair& b) {
        auto c = ord.compare(a.lcm, b.lcm);
        if (c != 0) return c > 0;
        return a.j != b.j ? a.j > b.j : a.i > b.i;
    };
    std::vector<Pair> pairs;

    auto unit_basis = [&] { return std::vector<Polynomial>{Polynomial::constant(ring, ring.one())}; };

    auto update = [&](Polynomial h) {
        const std::size_t hi = polys.size();
        const Monomial lh = h.leading_monomial();
        polys.push_back(std::move(h));
        active.push_back(true);

        std::vector<Pair> fresh;
        for (std::size_t g = 0; g < hi; ++g)
            if (active[g]) fresh.push_back({g, hi, lcm(polys[g].leading_monomial(), lh)});
        // Chain criterion among the new pairs: drop (g,h) when another new
        // pair's lcm divides its lcm (ties keep the first), unless coprime.
        std::vector<Pair> kept;
        for (std::size_t a = 0; a < fresh.size(); ++a) {
            const bool cop = polys[fresh[a].i].leading_monomial().coprime(lh);
            bool drop = false;
            if (!cop) {
                for (std::size_t b = 0; b < fresh.size() && !drop; ++b) {
                    if (a == b || !fresh[b].lcm.divides(fresh[a].lcm)) continue;
                    if (!(fresh[b].lcm == fresh[a].lcm) || b < a) drop = true;
                }
            } else {
                for (std::size_t b = 0; b < a && !drop; ++b)
                    if (fresh[b].lcm == fresh[a].lcm) drop = true;
            }
            if (!drop) kept.push_back(fresh[a]);
        }
        // Product criterion.
        std::vector<Pair> product_free;
        for (auto& p : kept)
            if (!polys[p.i].leading_monomial().coprime(lh)) product_free.push_back(std::move(p));
        // Old pairs made redundant by h.
        std::vector<Pair> survivors;
        for (auto& p : pairs) {
            if (lh.divides(p.lcm) && !(lcm(polys[p.i].leading_monomial(), lh) == p.lcm) &&
                !(lcm(polys[p.j].leading_monomial(), lh) == p.lcm))
                continue;
            survivors.push_back(std::move(p));
        }
        pairs = std::move(survivors);
        for (auto& p : product_free) pairs.push_back(std::move(p));
        std::make_heap(pairs.begin(), pairs.end(), later);
        for (std::size_t g = 0; g < hi; ++g)
            if (active[g] && lh.divides(polys[g].leading_monomial())) active[g] = false;
    };

    auto active_reducers = [&] {
        std::vector<detail::Reducer> r;
        for (std::size_t g = 0; g < polys.size(); ++g)
            if (active[g]) r.push_back({&polys[g], polys[g].leading_monomial().support_mask()});
        return r;
    };

    // Seed with the generators, each reduced against what is already in.
    std::vector<Polynomial> seeds;
    for (const auto& f : generators) {
        require_same_ring(f.ring(), ring);
        if (!f.is_zero()) seeds.push_back(f);
    }
    std::sort(seeds.begin(), seeds.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ord.compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    for (auto& f : seeds) {
        Polynomial h = detail::reduce_full(f, active_reducers());
        if (h.is_zero()) continue;
        if (h.is_constant()) return unit_basis();
        update(h.monic());
    }

    std::size_t reductions = 0;
    while (!pairs.empty()) {
        std::pop_heap(pairs.begin(), pairs.end(), later);
        Pair p = std::move(pairs.back());
        pairs.pop_back();
        if (++reductions > options.max_reductions) throw ResourceLimit("Groebner basis reduction budget exhausted");
        Polynomial h = detail::reduce_full(detail::s_polynomial(polys[p.i], polys[p.j]), active_reducers());
        if (h.is_zero()) continue;
        if (h.is_constant()) return unit_basis();
        update(h.monic());
    }

    // Minimal basis, then inter-reduce tails.
    std::vector<Polynomial> minimal;
    for (std::size_t g = 0; g < polys.size(); ++g)
        if (active[g]) minimal.push_back(polys[g]);
    std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ord.compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    std::vector<Polynomial> reduced;
    reduced.reserve(minimal.size());
    for (std::size_t k = 0; k < minimal.size(); ++k) {
        std::vector<Polynomial> others;
        for (std::size_t m = 0; m < minimal.size(); ++m)
            if (m != k) others.push_back(minimal[m]);
        Polynomial tail = minimal[k];
        Term lead = tail.leading_term();
        tail.mutable_terms().erase(tail.mutable_terms().begin());
        Polynomial r = detail::reduce_full(tail, detail::reducers_of(others));
        r.mutable_terms().insert(r.mutable_terms().begin(), lead);
        reduced.push_back(std::move(r));
    }
    return reduced;
}

} // namespace gmseq
