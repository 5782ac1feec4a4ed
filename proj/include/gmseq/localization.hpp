#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "ideal.hpp"
#include "module.hpp"
#include "multiplicity.hpp"
#include "parallel.hpp"

namespace gmseq {

/// The prime generated by a set of ring variables.
struct MonomialPrime {
    VarMask vars = 0;

    std::size_t height() const { return mask_size(vars); }

    /// Indices of the variables in the prime, ascending.
    std::vector<std::size_t> indices(std::size_t nvars) const {
        std::vector<std::size_t> r;
        for (std::size_t i = 0; i < nvars; ++i)
            if (vars >> i & 1u) r.push_back(i);
        return r;
    }

    std::string to_string(const PolyRing& ring) const {
        std::string s = "(";
        bool first = true;
        for (auto i : indices(ring.nvars())) {
            if (!first) s += ", ";
            s += ring.variable_name(i);
            first = false;
        }
        return first ? "(0)" : s + ")";
    }

    friend bool operator==(const MonomialPrime&, const MonomialPrime&) = default;
};

/// Canonical order on primes: by height, then by the variable set read as
/// a binary number.
inline bool canonical_less(const MonomialPrime& a, const MonomialPrime& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.vars < b.vars;
}

/// A at p: variables outside p become units, leaving an ideal of the
/// polynomial ring on p's variables.
inline Ideal localize_at_monomial_prime(const Ideal& a, const MonomialPrime& p) {
    if (!a.is_monomial()) throw PreconditionError("localization requires a monomial ideal");
    const PolyRing sub = a.ring().subring(p.indices(a.ring().nvars()));
    return Ideal::from_monomial(sub, a.monomial_ideal().localize(p.vars));
}

/// f with the variables outside p set to 1, as a polynomial on p's variables.
inline Polynomial localize_polynomial(const Polynomial& f, const MonomialPrime& p) {
    const auto idx = p.indices(f.ring().nvars());
    const PolyRing sub = f.ring().subring(idx);
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
        Monomial m(idx.size());
        for (std::size_t s = 0; s < idx.size(); ++s) m.set(s, t.monomial[idx[s]]);
        terms.push_back({m, t.coefficient});
    }
    return Polynomial::from_terms(sub, std::move(terms));
}

inline CyclicModule localize_module(const CyclicModule& m, const MonomialPrime& p) {
    return CyclicModule(localize_at_monomial_prime(m.annihilator(), p), m.equidimensional_asserted());
}

/// A candidate prime of the formula: a variable prime, or a graded prime
/// supplied by the user (primality assumed, not checked).
using CandidatePrime = std::variant<MonomialPrime, Ideal>;

struct LambdaSet {
    int k = 0;
    std::vector<CandidatePrime> primes;
    /// No complete enumeration was possible; `primes` is then a filtered
    /// user list, or empty.
    bool indeterminate = false;
    std::string reason;
};

namespace detail {

inline bool covers(VarMask p, const MonomialIdeal& m) {
    for (const auto& g : m.generators())
        if ((g.support_mask() & p) == 0) return false;
    return true;
}

/// dim M_p for a graded prime p containing K; needs monomial K or the
/// equidimensional assertion.
inline std::optional<int> module_dimension_at(const Ideal& p, const CyclicModule& m) {
    const int n = static_cast<int>(p.ring().nvars());
    const int height = n - krull_dimension(p);
    if (m.annihilator().is_monomial()) {
        int best = -1;
        for (auto q : min_primes_or_empty(m.annihilator().monomial_ideal()))
            if (p.contains(Ideal::from_monomial(p.ring(), MonomialIdeal::prime(p.ring().nvars(), q))))
                best = std::max(best, height - static_cast<int>(mask_size(q)));
        return best;
    }
    if (m.equidimensional_asserted()) return m.dimension() - krull_dimension(p);
    return std::nullopt;
}

} // namespace detail

/// Lambda_k: primes p over I + K with dim R/p = k and dim R/p + dim M_p = d.
/// Monomial data is enumerated over all variable sets; otherwise only the
/// user's primes can be filtered.
inline LambdaSet enumerate_lambda(const Ideal& i, const CyclicModule& m, int k,
                                  const std::vector<Ideal>* user_primes = nullptr) {
    require_same_ring(i.ring(), m.ring());
    LambdaSet out;
    out.k = k;
    const std::size_t n = i.ring().nvars();
    const int d = m.dimension();
    const Ideal sum = i + m.annihilator();
    if (i.is_monomial() && m.annihilator().is_monomial()) {
        if (n > 20) throw ResourceLimit("too many variables for the monomial prime scan");
        if (k < 0 || k > static_cast<int>(n)) return out;
        const MonomialIdeal s = sum.monomial_ideal();
        const auto k_primes = detail::min_primes_or_empty(m.annihilator().monomial_ideal());
        std::vector<MonomialPrime> found;
        for (VarMask p = 0; p < (VarMask{1} << n); ++p) {
            if (static_cast<int>(n - mask_size(p)) != k || !detail::covers(p, s)) continue;
            if (detail::local_dimension(p, k_primes) == d - k) found.push_back({p});
        }
        std::sort(found.begin(), found.end(), canonical_less);
        for (auto& p : found) out.primes.emplace_back(p);
        return out;
    }
    if (k == 0) {
        out.primes.emplace_back(MonomialPrime{static_cast<VarMask>(n >= 32 ? ~VarMask{0} : (VarMask{1} << n) - 1)});
        return out;
    }
    out.indeterminate = true;
    if (!user_primes) {
        out.reason = "non-monomial data: supply candidate primes";
        return out;
    }
    out.reason = "non-monomial data: filtered user primes only";
    for (const auto& p : *user_primes) {
        require_same_ring(p.ring(), i.ring());
        if (p.is_unit() || !p.contains(sum) || krull_dimension(p) != k) continue;
        auto dm = detail::module_dimension_at(p, m);
        if (dm && *dm == d - k) out.primes.emplace_back(p);
    }
    return out;
}

/// c_0(I R_p, M_p) by the full pipeline in the ring on p's variables.
inline std::int64_t local_c0(const Ideal& i, const CyclicModule& m, const MonomialPrime& p, const MultiplicityOptions& opt = {}) {
    require_same_ring(i.ring(), m.ring());
    if (!i.is_monomial() || !m.annihilator().is_monomial()) throw PreconditionError("local_c0 requires monomial data");
    const Ideal ip = localize_at_monomial_prime(i, p);
    const Ideal kp = localize_at_monomial_prime(m.annihilator(), p);
    if (kp.is_unit() || (ip + kp).is_unit()) return 0;
    if (p.vars == 0) throw PreconditionError("local_c0 at the zero prime needs I + K = 0");
    const CyclicModule mp(kp, m.equidimensional_asserted());
    return multiplicity_sequence(ip, mp, opt)[0];
}

enum class Verdict { match, mismatch, indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::match: return "match";
    case Verdict::mismatch: return "mismatch";
    case Verdict::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

struct Contribution {
    std::string prime;
    std::optional<MonomialPrime> monomial;
    std::int64_t c0 = 0;
    std::int64_t degree = 1;
    std::int64_t product() const { return c0 * degree; }
};

struct FormulaTerm {
    int k = 0;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    Verdict verdict = Verdict::indeterminate;
    std::string reason;
    /// Every member of Lambda_k, with its contribution.
    std::vector<Contribution> lambda;
    /// Labels of members with a nonzero contribution.
    std::vector<std::string> support;
};

struct FormulaReport {
    MultiplicitySequence lhs;
    std::vector<FormulaTerm> terms;
    StarResult star;
    bool star_ok = false;

    bool all_match() const {
        for (const auto& t : terms)
            if (t.verdict != Verdict::match) return false;
        return true;
    }
    bool any_mismatch() const {
        for (const auto& t : terms)
            if (t.verdict == Verdict::mismatch) return true;
        return false;
    }
};

/// LHS c_k against the sum of local c_0 e(R/p) over Lambda_k, for each k.
inline FormulaReport verify_formula(const Ideal& i, const CyclicModule& m, const MultiplicityOptions& opt = {},
                                    const std::vector<Ideal>* user_primes = nullptr, const StarOptions& sopt = {}) {
    require_same_ring(i.ring(), m.ring());
    FormulaReport r;
    r.lhs = multiplicity_sequence(i, m, opt);
    r.star = star_condition(i, m, sopt);
    r.star_ok = r.star.status == Tri::yes;
    const bool monomial = i.is_monomial() && m.annihilator().is_monomial();
    const int d = m.dimension();
    const int q = dimension_mod_ideal(i, m);
    const PolyRing& ring = i.ring();
    for (int k = 0; k <= d; ++k) {
        FormulaTerm t;
        t.k = k;
        t.lhs = r.lhs[k];
        LambdaSet lam = enumerate_lambda(i, m, k, user_primes);
        bool complete = !lam.indeterminate;
        if (!complete && k > q) {
            // dim R/p <= dim M/IM for every p in the support.
            lam.primes.clear();
            complete = true;
        }
        std::vector<Contribution> contrib(lam.primes.size());
        parallel_for(lam.primes.size(), opt.jobs, [&](std::size_t s) {
            Contribution& c = contrib[s];
            if (const auto* mp = std::get_if<MonomialPrime>(&lam.primes[s])) {
                c.prime = mp->to_string(ring);
                c.monomial = *mp;
                c.degree = degree_of_quotient(Ideal::from_monomial(ring, MonomialIdeal::prime(ring.nvars(), mp->vars)));
                if (monomial) {
                    MultiplicityOptions local = opt;
                    local.jobs = 1;
                    c.c0 = local_c0(i, m, *mp, local);
                } else {
                    c.c0 = r.lhs[0];
                }
            } else {
                const Ideal& p = std::get<Ideal>(lam.primes[s]);
                c.prime = p.to_string();
                c.degree = degree_of_quotient(p);
                c.c0 = 0;
            }
        });
        for (const auto& c : contrib) {
            t.rhs += c.product();
            if (c.product() != 0) t.support.push_back(c.prime);
        }
        t.lambda = std::move(contrib);
        if (!complete) {
            t.verdict = Verdict::indeterminate;
            t.reason = lam.reason;
        } else if (!r.star_ok) {
            t.verdict = Verdict::indeterminate;
            t.reason = std::string("condition (*) is ") + to_string(r.star.status) + ": " + r.star.reason;
        } else {
            t.verdict = t.lhs == t.rhs ? Verdict::match : Verdict::mismatch;
        }
        r.terms.push_back(std::move(t));
    }
    return r;
}

} // namespace gmseq
