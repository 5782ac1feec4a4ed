#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "hilbert_series.hpp"
#include "ideal.hpp"
#include "module.hpp"
#include "parallel.hpp"

namespace gmseq {

struct MultiplicityOptions {
    /// Initial table corner; 0 selects d + 4.
    unsigned initial_u = 0;
    unsigned initial_v = 0;
    unsigned window_width = 3;
    /// Largest corner coordinate the auto-grow loop may reach.
    unsigned grow_cap = 64;
    unsigned jobs = 1;
};

/// Rectangle of base points [u_lo, u_hi] x [v_lo, v_hi] on which every
/// extracting difference was certified constant.
struct StabilityWindow {
    unsigned u_lo = 0, u_hi = 0, v_lo = 0, v_hi = 0;
    friend bool operator==(const StabilityWindow&, const StabilityWindow&) = default;
};

struct MultiplicitySequence {
    std::vector<std::int64_t> c;
    int d = -1;
    StabilityWindow window;
    /// Table corner (U, V) used for the certificate.
    unsigned table_u = 0, table_v = 0;

    std::int64_t operator[](std::size_t k) const { return k < c.size() ? c[k] : 0; }
    friend bool operator==(const MultiplicitySequence& a, const MultiplicitySequence& b) { return a.d == b.d && a.c == b.c; }
};

/// h(u, v) for 0 <= u <= U, 0 <= v <= V.
class BigradedHilbertTable {
public:
    BigradedHilbertTable() = default;

    BigradedHilbertTable(std::vector<std::vector<std::int64_t>> values, int d) : h_(std::move(values)), d_(d) {
        if (h_.empty() || h_[0].empty()) throw PreconditionError("empty Hilbert table");
        for (const auto& row : h_)
            if (row.size() != h_[0].size()) throw PreconditionError("ragged Hilbert table");
    }

    /// Table of values supplied by the caller, for extraction checks.
    static BigradedHilbertTable synthetic(std::vector<std::vector<std::int64_t>> values, int d) {
        return BigradedHilbertTable(std::move(values), d);
    }

    unsigned u_max() const noexcept { return static_cast<unsigned>(h_.size() - 1); }
    unsigned v_max() const noexcept { return static_cast<unsigned>(h_[0].size() - 1); }
    int dimension() const noexcept { return d_; }
    std::int64_t at(unsigned u, unsigned v) const { return h_.at(u).at(v); }
    const std::vector<std::vector<std::int64_t>>& values() const noexcept { return h_; }

    /// Delta_u^a Delta_v^b h at (u, v) by forward differences.
    std::int64_t difference(unsigned a, unsigned b, unsigned u, unsigned v) const {
        if (u + a > u_max() || v + b > v_max()) throw PreconditionError("difference leaves the table");
        __int128 acc = 0;
        for (unsigned s = 0; s <= a; ++s) {
            const __int128 cs = detail::binomial128(a, s) * (((a - s) & 1u) ? -1 : 1);
            for (unsigned t = 0; t <= b; ++t) {
                const __int128 ct = detail::binomial128(b, t) * (((b - t) & 1u) ? -1 : 1);
                acc += detail::checked_mul128(detail::checked_mul128(cs, ct), h_[u + s][v + t]);
            }
        }
        return detail::narrow128(acc);
    }

private:
    std::vector<std::vector<std::int64_t>> h_;
    int d_ = -1;
};

namespace detail {

/// Hilbert series data for one I-degree j: the lengths of every
/// m-graded piece of I^j N / I^{j+1} N follow from the series of the
/// chain Q_0 = I^{j+1}A + L, Q_t = Q_{t-1} + (generators of I^j A in degree e_t).
struct Slice {
    std::vector<unsigned> degrees;
    std::vector<HilbertSeries> chain;

    std::int64_t component(unsigned i) const {
        std::int64_t s = 0;
        for (std::size_t t = 0; t < degrees.size(); ++t) {
            const std::int64_t deg = static_cast<std::int64_t>(degrees[t]) + i;
            s = checked_add(s, checked_sub(chain[t].coefficient(deg), chain[t + 1].coefficient(deg)));
        }
        return s;
    }
};

inline Ideal compact_product(const Ideal& a, const Ideal& b) {
    Ideal p = a * b;
    if (p.is_monomial()) return p;
    return Ideal(p.ring(), p.groebner_basis());
}

inline Ideal maximal_power_times(const Ideal& x, unsigned i) {
    return compact_product(Ideal::maximal(x.ring()).power(i), x);
}

inline void require_homogeneous(const Ideal& i, const char* what) {
    if (!i.is_homogeneous()) throw PreconditionError(std::string(what) + " must be homogeneous");
}

} // namespace detail

/// The bigraded Hilbert function of G_m(G_I(N)) for N = A/L, computed one
/// I-degree at a time and cached; m-degrees come for free from each slice.
class BigradedHilbertFunction {
public:
    BigradedHilbertFunction(Ideal i, Subquotient n, unsigned jobs = 1) : i_(std::move(i)), n_(std::move(n)), jobs_(jobs) {
        require_same_ring(i_.ring(), n_.ring());
        detail::require_homogeneous(i_, "I");
        if (i_.is_unit()) throw PreconditionError("I must be a proper ideal");
        powers_.push_back(n_.numerator());
    }

    BigradedHilbertFunction(Ideal i, const CyclicModule& m, unsigned jobs = 1)
        : BigradedHilbertFunction(std::move(i), Subquotient(m), jobs) {}

    const Ideal& ideal() const noexcept { return i_; }
    const Subquotient& module() const noexcept { return n_; }
    int dimension() const noexcept { return n_.dimension(); }

    /// lambda((m^i I^j N + I^{j+1} N) / (m^{i+1} I^j N + I^{j+1} N)).
    std::int64_t component(unsigned i, unsigned j) {
        ensure(j);
        return slices_[j].component(i);
    }

    BigradedHilbertTable table(unsigned u_max, unsigned v_max) {
        ensure(v_max);
        std::vector<std::vector<std::int64_t>> h(u_max + 1, std::vector<std::int64_t>(v_max + 1, 0));
        for (unsigned u = 0; u <= u_max; ++u)
            for (unsigned v = 0; v <= v_max; ++v) {
                std::int64_t x = slices_[v].component(u);
                if (x < 0) throw EngineError("negative component length");
                if (u) x = detail::checked_add(x, h[u - 1][v]);
                if (v) x = detail::checked_add(x, h[u][v - 1]);
                if (u && v) x = detail::checked_sub(x, h[u - 1][v - 1]);
                h[u][v] = x;
            }
        return BigradedHilbertTable(std::move(h), dimension());
    }

private:
    void ensure(unsigned j) {
        std::lock_guard lock(mu_);
        if (j < slices_.size()) return;
        while (powers_.size() < j + 2) powers_.push_back(detail::compact_product(powers_.back(), i_));
        const std::size_t first = slices_.size();
        std::vector<detail::Slice> fresh(j + 1 - first);
        parallel_for(fresh.size(), jobs_, [&](std::size_t k) { fresh[k] = make_slice(first + k); });
        for (auto& s : fresh) slices_.push_back(std::move(s));
    }

    detail::Slice make_slice(std::size_t j) const {
        const Ideal next = powers_[j + 1] + n_.denominator();
        std::map<unsigned, std::vector<Polynomial>> by_degree;
        for (const auto& g : powers_[j].generators())
            if (!next.contains(g)) by_degree[static_cast<unsigned>(g.degree())].push_back(g);
        detail::Slice s;
        Ideal q = next;
        s.chain.push_back(q.hilbert_series());
        for (auto& [deg, gens] : by_degree) {
            q = q + Ideal(q.ring(), gens);
            s.degrees.push_back(deg);
            s.chain.push_back(q.hilbert_series());
        }
        return s;
    }

    Ideal i_;
    Subquotient n_;
    unsigned jobs_;
    std::mutex mu_;
    std::vector<Ideal> powers_;
    std::vector<detail::Slice> slices_;
};

/// One bigraded component by a direct subquotient length; independent of
/// the sliced evaluation used for tables.
inline std::int64_t bigraded_component_length(const Ideal& i, const Subquotient& n, unsigned mi, unsigned ij) {
    require_same_ring(i.ring(), n.ring());
    detail::require_homogeneous(i, "I");
    const Ideal ij_a = detail::compact_product(i.power(ij), n.numerator());
    const Ideal tail = detail::compact_product(i, ij_a) + n.denominator();
    const Ideal top = detail::maximal_power_times(ij_a, mi) + tail;
    const Ideal bottom = detail::maximal_power_times(ij_a, mi + 1) + tail;
    return length_subquotient(top, bottom);
}

inline std::int64_t bigraded_component_length(const Ideal& i, const CyclicModule& m, unsigned mi, unsigned ij) {
    return bigraded_component_length(i, Subquotient(m), mi, ij);
}

inline BigradedHilbertTable bigraded_hilbert_function(const Ideal& i, const Subquotient& n, unsigned u_max, unsigned v_max,
                                                      unsigned jobs = 1) {
    BigradedHilbertFunction h(i, n, jobs);
    return h.table(u_max, v_max);
}

inline BigradedHilbertTable bigraded_hilbert_function(const Ideal& i, const CyclicModule& m, unsigned u_max, unsigned v_max,
                                                      unsigned jobs = 1) {
    BigradedHilbertFunction h(i, m, jobs);
    return h.table(u_max, v_max);
}

/// Reads c_k = Delta_u^k Delta_v^{d-k} h off the top corner of the table.
/// Every base point of a width x width window ending at (U-d-1, V-d-1)
/// must show all order-(d+1) differences zero and each c_k constant.
inline MultiplicitySequence extract_multiplicity_sequence(const BigradedHilbertTable& t, unsigned width = 3) {
    MultiplicitySequence r;
    r.d = t.dimension();
    r.table_u = t.u_max();
    r.table_v = t.v_max();
    if (width == 0) throw PreconditionError("window width must be positive");
    const int d = r.d;
    if (d < 0) {
        for (const auto& row : t.values())
            for (auto x : row)
                if (x != 0) throw EngineError("zero module with a nonzero Hilbert table");
        return r;
    }
    const unsigned need = static_cast<unsigned>(d) + width;
    if (t.u_max() < need || t.v_max() < need)
        throw NonStabilization("table smaller than the stability window", "table " + std::to_string(t.u_max()) + "x" +
                                                                              std::to_string(t.v_max()) + " needs " +
                                                                              std::to_string(need));
    r.window = {t.u_max() - d - width, t.u_max() - d - 1, t.v_max() - d - width, t.v_max() - d - 1};
    const auto& w = r.window;
    std::ostringstream residuals;
    int bad = 0;
    auto note = [&](const std::string& s) {
        if (bad++ < 8) residuals << s << "\n";
    };
    for (unsigned u = w.u_lo; u <= w.u_hi; ++u)
        for (unsigned v = w.v_lo; v <= w.v_hi; ++v)
            for (int a = 0; a <= d + 1; ++a) {
                auto x = t.difference(a, d + 1 - a, u, v);
                if (x != 0)
                    note("D_u^" + std::to_string(a) + " D_v^" + std::to_string(d + 1 - a) + " h(" + std::to_string(u) + "," +
                         std::to_string(v) + ") = " + std::to_string(x));
            }
    r.c.assign(d + 1, 0);
    for (int k = 0; k <= d; ++k) {
        const auto base = t.difference(k, d - k, w.u_lo, w.v_lo);
        for (unsigned u = w.u_lo; u <= w.u_hi; ++u)
            for (unsigned v = w.v_lo; v <= w.v_hi; ++v) {
                auto x = t.difference(k, d - k, u, v);
                if (x != base)
                    note("c_" + std::to_string(k) + " varies: " + std::to_string(base) + " at corner, " + std::to_string(x) +
                         " at (" + std::to_string(u) + "," + std::to_string(v) + ")");
            }
        r.c[k] = base;
    }
    if (bad) throw NonStabilization("Hilbert table not polynomial on the stability window", residuals.str());
    for (int k = 0; k <= d; ++k)
        if (r.c[k] < 0) throw EngineError("negative multiplicity c_" + std::to_string(k) + " = " + std::to_string(r.c[k]));
    return r;
}

/// Grows the table by a factor 1.5 until extraction certifies, or the cap is hit.
inline MultiplicitySequence multiplicity_sequence(BigradedHilbertFunction& h, const MultiplicityOptions& opt = {}) {
    const int d = h.dimension();
    const unsigned base = static_cast<unsigned>(std::max(d, 0)) + 4;
    const unsigned floor_size = static_cast<unsigned>(std::max(d, 0)) + opt.window_width;
    unsigned u = std::max(opt.initial_u ? opt.initial_u : base, floor_size);
    unsigned v = std::max(opt.initial_v ? opt.initial_v : base, floor_size);
    if (std::max(u, v) > opt.grow_cap) throw ResourceLimit("initial table exceeds the grow cap");
    for (;;) {
        try {
            return extract_multiplicity_sequence(h.table(u, v), opt.window_width);
        } catch (const NonStabilization& e) {
            if (u >= opt.grow_cap && v >= opt.grow_cap)
                throw NonStabilization("no stabilization up to grow cap " + std::to_string(opt.grow_cap), e.residuals());
            u = std::min(opt.grow_cap, std::max(u + 1, (3 * u + 1) / 2));
            v = std::min(opt.grow_cap, std::max(v + 1, (3 * v + 1) / 2));
        }
    }
}

inline MultiplicitySequence multiplicity_sequence(const Ideal& i, const Subquotient& n, const MultiplicityOptions& opt = {}) {
    BigradedHilbertFunction h(i, n, opt.jobs);
    return multiplicity_sequence(h, opt);
}

inline MultiplicitySequence multiplicity_sequence(const Ideal& i, const CyclicModule& m, const MultiplicityOptions& opt = {}) {
    return multiplicity_sequence(i, Subquotient(m), opt);
}

/// dim N/IN; -1 when IN = N.
inline int dimension_mod_ideal(const Ideal& i, const Subquotient& n) {
    Subquotient top(n.numerator(), detail::compact_product(i, n.numerator()) + n.denominator());
    return top.dimension();
}

inline int dimension_mod_ideal(const Ideal& i, const CyclicModule& m) {
    const Ideal s = i + m.annihilator();
    return s.is_unit() ? -1 : krull_dimension(s);
}

/// Hilbert-Samuel multiplicity e(I, N) from n -> lambda(N / I^{n+1} N).
inline std::int64_t classical_multiplicity(const Ideal& i, const Subquotient& n, const MultiplicityOptions& opt = {}) {
    require_same_ring(i.ring(), n.ring());
    detail::require_homogeneous(i, "I");
    if (n.is_zero()) throw PreconditionError("classical multiplicity of the zero module");
    if (dimension_mod_ideal(i, n) > 0) throw PreconditionError("classical multiplicity needs finite colength");
    const int d = n.dimension();
    const HilbertSeries top = n.numerator().hilbert_series();
    std::vector<std::int64_t> f;
    Ideal power = n.numerator();
    auto extend = [&](std::size_t count) {
        while (f.size() < count) {
            power = detail::compact_product(power, i);
            f.push_back(*finite_length_between(top, (power + n.denominator()).hilbert_series()));
        }
    };
    auto diff = [&](unsigned order, std::size_t at) {
        __int128 acc = 0;
        for (unsigned s = 0; s <= order; ++s)
            acc += detail::binomial128(order, s) * (((order - s) & 1u) ? -1 : 1) * f[at + s];
        return detail::narrow128(acc);
    };
    const unsigned w = std::max(1u, opt.window_width);
    std::size_t len = static_cast<std::size_t>(d) + 4 + w;
    for (;;) {
        extend(len);
        const std::size_t hi = len - d - 2;
        bool ok = true;
        for (std::size_t at = hi + 1 - w; at <= hi && ok; ++at) ok = diff(d + 1, at) == 0;
        if (ok) {
            const auto e = diff(d, hi);
            if (e <= 0) throw EngineError("non-positive Hilbert-Samuel multiplicity");
            return e;
        }
        if (len >= opt.grow_cap + static_cast<std::size_t>(d) + w + 2)
            throw NonStabilization("Hilbert-Samuel function not polynomial up to the grow cap", "");
        len = len * 3 / 2;
    }
}

inline std::int64_t classical_multiplicity(const Ideal& i, const CyclicModule& m, const MultiplicityOptions& opt = {}) {
    return classical_multiplicity(i, Subquotient(m), opt);
}

/// l_M(I) as the dimension of the special fiber of the Rees algebra of
/// I on R/K: eliminate t from K + (T_k - g_k t), then set x = 0.
inline int analytic_spread(const Ideal& i, const CyclicModule& m, const GroebnerOptions& gopt = {}) {
    const PolyRing& ring = i.ring();
    require_same_ring(ring, m.ring());
    if (i.is_unit()) throw PreconditionError("analytic spread of the unit ideal");
    const auto& gens = i.is_monomial() ? i.generators() : i.groebner_basis();
    if (gens.empty()) return 0;
    const std::size_t n = ring.nvars(), s = gens.size();
    std::vector<std::string> names{detail::fresh_variable(ring, "t")};
    names.insert(names.end(), ring.variables().begin(), ring.variables().end());
    std::vector<std::string> tags;
    for (std::size_t k = 0; k < s; ++k) {
        PolyRing probe(names);
        std::string tag = detail::fresh_variable(probe, "T" + std::to_string(k));
        names.push_back(tag);
        tags.push_back(tag);
    }
    PolyRing big(names, ring.characteristic(), MonomialOrder::elimination(1));
    std::vector<Polynomial> rel;
    for (const auto& g : m.annihilator().generators()) rel.push_back(detail::embed_shifted(g, big, 1));
    const Polynomial t = Polynomial::variable(big, 0);
    for (std::size_t k = 0; k < s; ++k)
        rel.push_back(Polynomial::variable(big, 1 + n + k) - t * detail::embed_shifted(gens[k], big, 1));
    PolyRing fiber(tags, ring.characteristic());
    std::vector<Polynomial> special;
    for (const auto& b : groebner_basis(rel, big, gopt)) {
        if (b.leading_monomial()[0] != 0) continue;
        std::vector<Term> kept;
        for (const auto& term : b.terms()) {
            bool has_x = false;
            for (std::size_t v = 1; v <= n && !has_x; ++v) has_x = term.monomial[v] != 0;
            if (has_x) continue;
            Monomial mm(s);
            for (std::size_t k = 0; k < s; ++k) mm.set(k, term.monomial[1 + n + k]);
            kept.push_back({mm, term.coefficient});
        }
        special.push_back(Polynomial::from_terms(fiber, std::move(kept)));
    }
    Ideal f(fiber, std::move(special));
    return f.is_unit() ? -1 : krull_dimension(f);
}

namespace detail {

/// max |P| - |Q| over the minimal primes Q of `ann` inside P; -1 if none.
inline int local_dimension(VarMask p, const std::vector<VarMask>& min_primes_of_ann) {
    int best = -1;
    for (auto q : min_primes_of_ann)
        if ((q & ~p) == 0) best = std::max(best, static_cast<int>(mask_size(p)) - static_cast<int>(mask_size(q)));
    return best;
}

inline std::vector<VarMask> min_primes_or_empty(const MonomialIdeal& m) {
    return m.is_unit() ? std::vector<VarMask>{} : m.minimal_primes();
}

} // namespace detail

/// het_M(I): the least dim M_p over p in Supp M containing I.
inline int height_on_module(const Ideal& i, const CyclicModule& m) {
    require_same_ring(i.ring(), m.ring());
    const Ideal sum = i + m.annihilator();
    if (sum.is_unit()) throw PreconditionError("het undefined: I + K is the unit ideal");
    if (i.is_monomial() && m.annihilator().is_monomial()) {
        const auto k_primes = m.annihilator().monomial_ideal().minimal_primes();
        int best = -1;
        for (auto p : sum.monomial_ideal().minimal_primes()) {
            const int local = detail::local_dimension(p, k_primes);
            if (best < 0 || local < best) best = local;
        }
        return best;
    }
    if (!m.equidimensional_asserted())
        throw PreconditionError("het on non-monomial data requires the equidimensional assertion");
    return m.dimension() - krull_dimension(sum);
}

enum class Tri { yes, no, indeterminate };

inline const char* to_string(Tri t) {
    switch (t) {
    case Tri::yes: return "true";
    case Tri::no: return "false";
    case Tri::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

struct StarResult {
    Tri status = Tri::indeterminate;
    std::string reason;
    /// Monomial prime (variable set) where the dimensions first differ.
    std::optional<VarMask> witness;
};

struct StarOptions {
    /// Largest n tried when K : I^n has not stabilized earlier.
    unsigned power_cap = 16;
    /// Rings with more variables are rejected by the exhaustive prime scan.
    std::size_t max_scan_variables = 20;
};

/// Condition (*): dim M_p = dim I^n M_p for all n and p in Supp M/IM.
inline StarResult star_condition(const Ideal& i, const CyclicModule& m, const StarOptions& opt = {}) {
    const Ideal sum = i + m.annihilator();
    if (sum.is_unit()) return {Tri::yes, "Supp M/IM is empty", std::nullopt};
    const bool monomial = i.is_monomial() && m.annihilator().is_monomial();
    if (monomial || m.equidimensional_asserted()) {
        if (height_on_module(i, m) > 0) return {Tri::yes, "het > 0", std::nullopt};
    }
    if (!monomial) return {Tri::indeterminate, "non-monomial data with het = 0 or unknown", std::nullopt};
    const std::size_t n = i.ring().nvars();
    if (n > opt.max_scan_variables) throw ResourceLimit("too many variables for the monomial prime scan");
    const MonomialIdeal k = m.annihilator().monomial_ideal();
    const MonomialIdeal im = i.monomial_ideal();
    const MonomialIdeal s = sum.monomial_ideal();
    const auto k_primes = detail::min_primes_or_empty(k);
    std::vector<VarMask> support;
    for (VarMask p = 0; p < (VarMask{1} << n); ++p) {
        bool covers = true;
        for (const auto& g : s.generators())
            if ((g.support_mask() & p) == 0) {
                covers = false;
                break;
            }
        if (covers) support.push_back(p);
    }
    MonomialIdeal previous = k;
    MonomialIdeal power = MonomialIdeal::unit(n);
    for (unsigned e = 1; e <= opt.power_cap; ++e) {
        power = power * im;
        const MonomialIdeal colon = k.colon(power);
        if (colon == previous) return {Tri::yes, "K : I^n stable from n = " + std::to_string(e - 1), std::nullopt};
        const auto c_primes = detail::min_primes_or_empty(colon);
        for (auto p : support)
            if (detail::local_dimension(p, k_primes) != detail::local_dimension(p, c_primes))
                return {Tri::no, "dim M_p != dim I^n M_p at n = " + std::to_string(e), p};
        previous = colon;
    }
    return {Tri::indeterminate, "K : I^n not stable for n <= " + std::to_string(opt.power_cap), std::nullopt};
}

struct Diagnostics {
    int d = 0;
    int q = 0;
    std::optional<int> ell;
    std::optional<int> het;
    StarResult star;
    bool finite_colength = false;
    /// d - ell > q would contradict the vanishing bounds.
    bool consistent = true;
};

inline Diagnostics diagnostics(const Ideal& i, const CyclicModule& m, bool with_analytic_spread, const StarOptions& sopt = {}) {
    Diagnostics g;
    g.d = m.dimension();
    g.q = dimension_mod_ideal(i, m);
    g.finite_colength = g.q <= 0;
    try {
        g.het = height_on_module(i, m);
    } catch (const PreconditionError&) {
    }
    g.star = star_condition(i, m, sopt);
    if (with_analytic_spread) g.ell = analytic_spread(i, m);
    if (g.ell) g.consistent = g.d - *g.ell <= g.q;
    return g;
}

} // namespace gmseq
