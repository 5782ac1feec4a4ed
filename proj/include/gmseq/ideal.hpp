#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "groebner.hpp"
#include "hilbert_series.hpp"
#include "monomial_ideal.hpp"
#include "parse.hpp"
#include "polynomial.hpp"

namespace gmseq {

namespace detail {

struct GbCache {
    std::once_flag once;
    std::vector<Polynomial> basis;
    MonomialIdeal initial;
};

/// Variable name not used by `ring`, for auxiliary elimination variables.
inline std::string fresh_variable(const PolyRing& ring, std::string_view stem) {
    std::string name(stem);
    for (int k = 0; ring.index_of(name); ++k) name = std::string(stem) + std::to_string(k);
    return name;
}

/// Copy of p in `target`, whose variables are `offset` extra variables
/// followed by those of p's ring.
inline Polynomial embed_shifted(const Polynomial& p, const PolyRing& target, std::size_t offset) {
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        Monomial m(target.nvars());
        for (std::size_t i = 0; i < t.monomial.arity(); ++i) m.set(i + offset, t.monomial[i]);
        terms.push_back({m, t.coefficient});
    }
    return Polynomial::from_terms(target, std::move(terms));
}

/// Inverse of embed_shifted; p must not involve the first `offset` variables.
inline Polynomial restrict_shifted(const Polynomial& p, const PolyRing& target, std::size_t offset) {
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        Monomial m(target.nvars());
        for (std::size_t i = 0; i < target.nvars(); ++i) m.set(i, t.monomial[i + offset]);
        terms.push_back({m, t.coefficient});
    }
    return Polynomial::from_terms(target, std::move(terms));
}

/// Exact quotient g / f. A nonzero remainder means a caller produced a
/// non-multiple of f and is reported as an engine bug.
inline Polynomial exact_divide(Polynomial g, const Polynomial& f) {
    Polynomial q(g.ring());
    const Coefficient lc_inv = f.leading_coefficient().inverse();
    while (!g.is_zero()) {
        const Term& lt = g.leading_term();
        if (!f.leading_monomial().divides(lt.monomial)) throw EngineError("division-witness failure in colon computation");
        Monomial m = lt.monomial / f.leading_monomial();
        Coefficient c = lt.coefficient * lc_inv;
        q = q + Polynomial::term(g.ring(), m, c);
        g = g - f.times_term(m, c);
    }
    return q;
}

} // namespace detail

/// Ideal of a PolyRing, held by a generator list with a lazily computed,
/// shared reduced Groebner basis under the ring's order. Values are
/// immutable; copies share the cache, which is populated at most once.
class Ideal {
public:
    explicit Ideal(PolyRing ring) : ring_(std::move(ring)), cache_(std::make_shared<detail::GbCache>()) {}

    Ideal(PolyRing ring, std::vector<Polynomial> generators) : Ideal(std::move(ring)) {
        for (auto& g : generators) {
            require_same_ring(ring_, g.ring());
            if (!g.is_zero()) gens_.push_back(std::move(g));
        }
    }

    /// Generators given as text in the polynomial grammar.
    static Ideal parse(const PolyRing& ring, const std::vector<std::string>& texts) {
        std::vector<Polynomial> g;
        for (const auto& t : texts) g.push_back(parse_polynomial(t, ring));
        return Ideal(ring, std::move(g));
    }

    static Ideal unit(const PolyRing& ring) { return Ideal(ring, {Polynomial::constant(ring, ring.one())}); }

    static Ideal maximal(const PolyRing& ring) {
        std::vector<Polynomial> g;
        for (std::size_t i = 0; i < ring.nvars(); ++i) g.push_back(Polynomial::variable(ring, i));
        return Ideal(ring, std::move(g));
    }

    static Ideal from_monomial(const PolyRing& ring, const MonomialIdeal& m) {
        if (m.nvars() != ring.nvars()) throw RingMismatch("monomial ideal arity does not match ring");
        std::vector<Polynomial> g;
        for (const auto& x : m.generators()) g.push_back(Polynomial::monomial(ring, x));
        return Ideal(ring, std::move(g));
    }

    const PolyRing& ring() const noexcept { return ring_; }
    const std::vector<Polynomial>& generators() const noexcept { return gens_; }

    bool is_monomial() const {
        return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& p) { return p.is_monomial(); });
    }

    bool is_homogeneous() const {
        return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& p) { return p.is_homogeneous(); });
    }

    /// The monomial ideal generated by the (monomial) generators.
    MonomialIdeal monomial_ideal() const {
        if (!is_monomial()) throw PreconditionError("ideal has a non-monomial generator");
        std::vector<Monomial> m;
        for (const auto& g : gens_) m.push_back(g.leading_monomial());
        return MonomialIdeal(ring_.nvars(), std::move(m));
    }

    /// Reduced Groebner basis under the ring's order (cached).
    const std::vector<Polynomial>& groebner_basis() const {
        fill_cache();
        return cache_->basis;
    }

    /// in(I) under the ring's order (cached).
    const MonomialIdeal& initial_ideal() const {
        fill_cache();
        return cache_->initial;
    }

    bool is_zero() const { return gens_.empty(); }
    bool is_unit() const { return initial_ideal().is_unit(); }

    Polynomial normal_form(const Polynomial& f) const {
        require_same_ring(ring_, f.ring());
        return gmseq::normal_form(f, groebner_basis());
    }

    bool contains(const Polynomial& f) const {
        require_same_ring(ring_, f.ring());
        if (f.is_zero()) return true;
        if (f.is_monomial() && is_monomial()) return initial_ideal().contains(f.leading_monomial());
        return normal_form(f).is_zero();
    }

    bool contains(const Ideal& o) const {
        require_same_ring(ring_, o.ring_);
        if (is_monomial() && o.is_monomial()) return initial_ideal().contains(o.monomial_ideal());
        return std::all_of(o.gens_.begin(), o.gens_.end(), [&](const Polynomial& g) { return contains(g); });
    }

    /// Reduced bases are unique, so equality is basis identity.
    friend bool operator==(const Ideal& a, const Ideal& b) {
        require_same_ring(a.ring_, b.ring_);
        if (a.is_monomial() && b.is_monomial()) return a.initial_ideal() == b.initial_ideal();
        const auto& x = a.groebner_basis();
        const auto& y = b.groebner_basis();
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!(x[i] == y[i])) return false;
        return true;
    }

    friend Ideal operator+(const Ideal& a, const Ideal& b) {
        require_same_ring(a.ring_, b.ring_);
        if (a.is_monomial() && b.is_monomial()) return from_monomial(a.ring_, a.monomial_ideal() + b.monomial_ideal());
        std::vector<Polynomial> g = a.gens_;
        g.insert(g.end(), b.gens_.begin(), b.gens_.end());
        return Ideal(a.ring_, std::move(g));
    }

    friend Ideal operator*(const Ideal& a, const Ideal& b) {
        require_same_ring(a.ring_, b.ring_);
        if (a.is_monomial() && b.is_monomial()) return from_monomial(a.ring_, a.monomial_ideal() * b.monomial_ideal());
        std::vector<Polynomial> g;
        for (const auto& x : a.gens_)
            for (const auto& y : b.gens_) g.push_back(x * y);
        return Ideal(a.ring_, std::move(g));
    }

    /// Principal ideal product f * I.
    Ideal times(const Polynomial& f) const {
        require_same_ring(ring_, f.ring());
        std::vector<Polynomial> g;
        for (const auto& x : gens_) g.push_back(x * f);
        return Ideal(ring_, std::move(g));
    }

    /// I^n with I^0 = (1).
    Ideal power(unsigned n) const {
        if (is_monomial()) return from_monomial(ring_, monomial_ideal().power(n));
        Ideal r = unit(ring_);
        for (unsigned k = 0; k < n; ++k) r = r * *this;
        return r;
    }

    /// I intersect J via t*I + (1-t)*J and elimination of t.
    Ideal intersect(const Ideal& o) const {
        require_same_ring(ring_, o.ring_);
        if (is_monomial() && o.is_monomial()) return from_monomial(ring_, monomial_ideal().intersect(o.monomial_ideal()));
        if (is_zero() || o.is_zero()) return Ideal(ring_);
        std::vector<std::string> names{detail::fresh_variable(ring_, "t")};
        names.insert(names.end(), ring_.variables().begin(), ring_.variables().end());
        PolyRing big(std::move(names), ring_.characteristic(), MonomialOrder::elimination(1));
        const Polynomial t = Polynomial::variable(big, 0);
        const Polynomial one_minus_t = Polynomial::constant(big, big.one()) - t;
        std::vector<Polynomial> g;
        for (const auto& f : gens_) g.push_back(t * detail::embed_shifted(f, big, 1));
        for (const auto& f : o.gens_) g.push_back(one_minus_t * detail::embed_shifted(f, big, 1));
        std::vector<Polynomial> out;
        for (const auto& b : gmseq::groebner_basis(g, big))
            if (b.leading_monomial()[0] == 0) out.push_back(detail::restrict_shifted(b, ring_, 1));
        return Ideal(ring_, std::move(out));
    }

    /// I : f, computed as (I intersect (f)) / f.
    Ideal colon(const Polynomial& f) const {
        require_same_ring(ring_, f.ring());
        if (f.is_zero()) return unit(ring_);
        if (f.is_monomial() && is_monomial())
            return from_monomial(ring_, monomial_ideal().colon(f.leading_monomial()));
        Ideal meet = intersect(Ideal(ring_, {f}));
        std::vector<Polynomial> g;
        for (const auto& h : meet.groebner_basis()) g.push_back(detail::exact_divide(h, f));
        return Ideal(ring_, std::move(g));
    }

    /// I : J = intersection of I : g over generators g of J.
    Ideal colon(const Ideal& o) const {
        require_same_ring(ring_, o.ring_);
        if (is_monomial() && o.is_monomial()) return from_monomial(ring_, monomial_ideal().colon(o.monomial_ideal()));
        Ideal r = unit(ring_);
        for (const auto& g : o.gens_) r = r.intersect(colon(g));
        return r;
    }

    /// Whether f lies in the radical, via 1 in I + (1 - s f).
    bool radical_contains(const Polynomial& f) const {
        require_same_ring(ring_, f.ring());
        if (is_monomial() && f.is_monomial()) return monomial_ideal().radical().contains(f.leading_monomial());
        std::vector<std::string> names{detail::fresh_variable(ring_, "s")};
        names.insert(names.end(), ring_.variables().begin(), ring_.variables().end());
        PolyRing big(std::move(names), ring_.characteristic());
        std::vector<Polynomial> g;
        for (const auto& h : gens_) g.push_back(detail::embed_shifted(h, big, 1));
        g.push_back(Polynomial::constant(big, big.one()) - Polynomial::variable(big, 0) * detail::embed_shifted(f, big, 1));
        auto gb = gmseq::groebner_basis(g, big);
        return gb.size() == 1 && gb[0].is_constant();
    }

    /// Krull dimension of R/I from the initial ideal. Throws on the unit ideal.
    int dimension() const {
        if (is_unit()) throw PreconditionError("dimension of R/I undefined for the unit ideal");
        return initial_ideal().dimension();
    }

    /// Hilbert series of R/I. Requires homogeneous generators.
    HilbertSeries hilbert_series() const {
        if (!is_homogeneous()) throw PreconditionError("Hilbert series requires homogeneous generators");
        return initial_ideal().hilbert_series();
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t k = 0; k < gens_.size(); ++k) {
            if (k) s += ", ";
            s += gens_[k].to_string();
        }
        return gens_.empty() ? "(0)" : s + ")";
    }

private:
    void fill_cache() const {
        std::call_once(cache_->once, [this] {
            if (is_monomial()) {
                MonomialIdeal m = monomial_ideal();
                std::vector<Monomial> g = m.generators();
                const auto& ord = ring_.order();
                std::sort(g.begin(), g.end(), [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) < 0; });
                for (auto& x : g) cache_->basis.push_back(Polynomial::monomial(ring_, x));
                cache_->initial = std::move(m);
            } else {
                cache_->basis = gmseq::groebner_basis(gens_, ring_);
                std::vector<Monomial> lead;
                for (const auto& b : cache_->basis) lead.push_back(b.leading_monomial());
                cache_->initial = MonomialIdeal(ring_.nvars(), std::move(lead));
            }
        });
    }

    PolyRing ring_;
    std::vector<Polynomial> gens_;
    std::shared_ptr<detail::GbCache> cache_;
};

/// Krull dimension of R/I.
inline int krull_dimension(const Ideal& i) { return i.dimension(); }

/// lambda(A/B) for B contained in A, from the difference of Hilbert series.
inline std::int64_t length_subquotient(const Ideal& a, const Ideal& b) {
    require_same_ring(a.ring(), b.ring());
    if (!a.contains(b)) throw PreconditionError("length_subquotient: denominator not contained in numerator");
    auto len = finite_length_between(a.hilbert_series(), b.hilbert_series());
    if (!len) throw PreconditionError("length_subquotient: quotient has infinite length");
    return *len;
}

/// e(R/P) for a homogeneous prime P: the reduced Hilbert numerator at 1.
/// Monomial input must be generated by variables; other input is assumed prime.
inline std::int64_t degree_of_quotient(const Ideal& p) {
    if (p.is_unit()) throw PreconditionError("degree_of_quotient: unit ideal");
    if (p.is_monomial()) {
        const MonomialIdeal m = p.monomial_ideal();
        for (const auto& g : m.generators())
            if (g.degree() != 1) throw PreconditionError("degree_of_quotient: monomial ideal is not generated by variables");
    }
    return p.hilbert_series().degree();
}

/// Minimal primes (as variable sets) of a monomial ideal.
struct MonomialPrimeList {
    std::vector<VarMask> primes;
};

inline MonomialPrimeList minimal_primes_monomial(const Ideal& i) {
    if (!i.is_monomial()) throw PreconditionError("minimal_primes_monomial: non-monomial generator");
    return {i.monomial_ideal().minimal_primes()};
}

} // namespace gmseq
