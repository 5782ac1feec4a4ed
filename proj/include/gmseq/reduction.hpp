#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "ideal.hpp"
#include "localization.hpp"
#include "module.hpp"
#include "multiplicity.hpp"
#include "parallel.hpp"

namespace gmseq {

/// Least n <= n_max with J^{n+1}M = I J^n M, if any.
struct DirectVerdict {
    std::optional<unsigned> reduced_at;
    unsigned n_max = 0;
};

inline DirectVerdict is_reduction(const Ideal& i, const Ideal& j, const CyclicModule& m, unsigned n_max = 12) {
    require_same_ring(i.ring(), j.ring());
    require_same_ring(i.ring(), m.ring());
    if (!j.contains(i)) throw PreconditionError("I is not contained in J");
    const Ideal& k = m.annihilator();
    DirectVerdict v;
    v.n_max = n_max;
    Ideal jn = Ideal::unit(i.ring());
    for (unsigned n = 0; n <= n_max; ++n) {
        const Ideal next = detail::compact_product(jn, j);
        if (next + k == detail::compact_product(i, jn) + k) {
            const Ideal after = detail::compact_product(next, j);
            if (!(after + k == detail::compact_product(i, next) + k))
                throw EngineError("reduction equality did not persist to n + 1");
            v.reduced_at = n;
            return v;
        }
        jn = next;
    }
    return v;
}

enum class ReductionVerdict { reduction, not_reduction, indeterminate };

inline const char* to_string(ReductionVerdict v) {
    switch (v) {
    case ReductionVerdict::reduction: return "reduction";
    case ReductionVerdict::not_reduction: return "not-reduction";
    case ReductionVerdict::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

struct ReductionOptions {
    MultiplicityOptions multiplicity;
    unsigned n_max = 12;
    /// Escalation ceiling when the criterion says reduction but the direct
    /// test has not found one yet.
    unsigned n_max_escalated = 48;
};

struct ReductionReport {
    bool contained = false;
    DirectVerdict direct;
    MultiplicitySequence seq_i;
    MultiplicitySequence seq_j;
    std::optional<int> het;
    bool equidimensional = false;
    ReductionVerdict verdict = ReductionVerdict::indeterminate;
    /// The hypotheses the verdict consumed, or why none could be applied.
    std::string basis;
    bool consistent = true;
};

inline ReductionReport rees_criterion(const Ideal& i, const Ideal& j, const CyclicModule& m, const ReductionOptions& opt = {}) {
    require_same_ring(i.ring(), j.ring());
    require_same_ring(i.ring(), m.ring());
    if (i.is_unit() || j.is_unit()) throw PreconditionError("I and J must be proper");
    ReductionReport r;
    r.contained = j.contains(i);
    if (!r.contained) throw PreconditionError("I is not contained in J");
    r.seq_i = multiplicity_sequence(i, m, opt.multiplicity);
    r.seq_j = multiplicity_sequence(j, m, opt.multiplicity);
    r.equidimensional = m.equidimensional_asserted();
    try {
        r.het = height_on_module(i, m);
    } catch (const PreconditionError&) {
    }
    if (!(r.seq_i == r.seq_j)) {
        r.verdict = ReductionVerdict::not_reduction;
        r.basis = "sequences differ (converse direction, no extra hypotheses)";
    } else if (!r.het || *r.het <= 0) {
        r.verdict = ReductionVerdict::indeterminate;
        r.basis = r.het ? "sequences equal but het = " + std::to_string(*r.het) : "sequences equal but het unknown";
    } else if (!r.equidimensional) {
        r.verdict = ReductionVerdict::indeterminate;
        r.basis = "sequences equal but M is not asserted equidimensional";
    } else {
        r.verdict = ReductionVerdict::reduction;
        r.basis = "sequences equal, het > 0, M equidimensional";
    }
    r.direct = is_reduction(i, j, m, opt.n_max);
    for (unsigned n = opt.n_max * 2; !r.direct.reduced_at && r.verdict == ReductionVerdict::reduction; n *= 2) {
        r.direct = is_reduction(i, j, m, std::min(n, opt.n_max_escalated));
        if (n >= opt.n_max_escalated) break;
    }
    if (r.verdict == ReductionVerdict::reduction) r.consistent = r.direct.reduced_at.has_value();
    if (r.verdict == ReductionVerdict::not_reduction) r.consistent = !r.direct.reduced_at.has_value();
    return r;
}

/// One validation step of a superficial candidate.
struct Evidence {
    std::string check;
    bool passed = false;
    std::string detail;
    friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct SuperficialOptions {
    unsigned trials = 10;
    std::uint64_t seed = 0;
    /// Coefficient bound for trial t is base_bound * (t + 1).
    long base_bound = 5;
    /// Largest c tried for the nonzerodivisor test on I^c M.
    unsigned c_cap = 8;
    bool validate_localizations = false;
    MultiplicityOptions multiplicity;
};

struct SuperficialCandidate {
    Polynomial element;
    std::vector<long> coefficients;
    unsigned trial = 0;
    unsigned c_exponent = 0;
    std::vector<Evidence> evidence;
};

struct TrialOutcome {
    SuperficialCandidate candidate;
    bool accepted = false;
};

/// All trials failed; `trials()` holds each trial's evidence.
class SuperficialSearchFailed : public Error {
public:
    SuperficialSearchFailed(const std::string& what, std::vector<TrialOutcome> trials)
        : Error(what), trials_(std::move(trials)) {}
    const std::vector<TrialOutcome>& trials() const noexcept { return trials_; }

private:
    std::vector<TrialOutcome> trials_;
};

namespace detail {

/// Uniform integer in [0, span) by rejection, independent of the standard
/// library's distribution algorithms.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t span) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % span;
    std::uint64_t r;
    do r = g();
    while (r >= limit);
    return r % span;
}

inline long draw_coefficient(std::mt19937_64& g, long b) {
    return static_cast<long>(uniform_below(g, static_cast<std::uint64_t>(2 * b + 1))) - b;
}

inline std::mt19937_64 trial_stream(std::uint64_t seed, unsigned trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(trial)};
    return std::mt19937_64(seq);
}

inline std::vector<Polynomial> superficial_generators(const Ideal& i) {
    std::vector<Polynomial> g;
    if (i.is_monomial()) {
        const MonomialIdeal mi = i.monomial_ideal();
        for (const auto& m : mi.generators()) g.push_back(Polynomial::monomial(i.ring(), m));
    } else {
        g = i.generators();
    }
    for (const auto& p : g)
        if (!p.is_homogeneous() || p.degree() != g.front().degree())
            throw PreconditionError("superficial search requires I generated in a single degree");
    return g;
}

inline std::string join(const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s;
}

/// Nonzerodivisor exponent and c_i preservation for x on R/K, appended to
/// `ev` with `tag` prefixed to each check name. Returns whether all passed.
inline bool validate_superficial(const Ideal& i, const Ideal& k, const Polynomial& x, unsigned c_cap,
                                 const MultiplicityOptions& mopt, const std::string& tag, unsigned& c_out,
                                 std::vector<Evidence>& ev) {
    const PolyRing& ring = i.ring();
    const Ideal kx = k.colon(x);
    std::optional<unsigned> c;
    Ideal ic = Ideal::unit(ring);
    for (unsigned e = 0; e <= c_cap; ++e) {
        if (e > 0) ic = compact_product(ic, i);
        if (k.contains(kx.intersect(ic + k))) {
            c = e;
            break;
        }
    }
    if (!c) {
        ev.push_back({tag + "nonzerodivisor on I^c M", false, "none for c <= " + std::to_string(c_cap)});
        return false;
    }
    c_out = *c;
    ev.push_back({tag + "nonzerodivisor on I^c M", true, "c = " + std::to_string(*c)});
    const CyclicModule m(k);
    const int d = m.dimension();
    if (d < 2) {
        ev.push_back({tag + "c_i preserved for i <= d-2", true, "vacuous: d = " + std::to_string(d)});
        return true;
    }
    const Ideal xi = Ideal(ring, {x});
    const Subquotient base = *c == 0 ? Subquotient(m) : Subquotient(ic + k, k);
    const Subquotient cut = *c == 0 ? Subquotient(Ideal::unit(ring), k + xi) : Subquotient(ic + k, compact_product(ic, xi) + k);
    const auto seq_m = multiplicity_sequence(i, m, mopt);
    bool ok = true;
    if (*c > 0) {
        const auto seq_base = multiplicity_sequence(i, base, mopt);
        bool same = seq_base.d == d;
        for (int s = 0; s <= d - 1 && same; ++s) same = seq_base[s] == seq_m[s];
        ev.push_back({tag + "c_i(I,M) = c_i(I,I^cM) for i <= d-1", same, "(" + join(seq_m.c) + ") vs (" + join(seq_base.c) + ")"});
        ok = same;
    }
    if (cut.dimension() != d - 1) {
        ev.push_back({tag + "dimension drops by one", false, "dim " + std::to_string(cut.dimension())});
        return false;
    }
    const auto seq_cut = multiplicity_sequence(i, cut, mopt);
    bool same = true;
    for (int s = 0; s <= d - 2; ++s) same = same && seq_cut[s] == seq_m[s];
    ev.push_back({tag + "c_i preserved for i <= d-2", same, "(" + join(seq_m.c) + ") vs (" + join(seq_cut.c) + ")"});
    return ok && same;
}

} // namespace detail

/// One seeded trial; deterministic in (I, M, seed, trial).
inline TrialOutcome superficial_trial(const Ideal& i, const CyclicModule& m, unsigned trial, const SuperficialOptions& opt) {
    const PolyRing& ring = i.ring();
    const auto gens = detail::superficial_generators(i);
    auto g = detail::trial_stream(opt.seed, trial);
    const long bound = opt.base_bound * static_cast<long>(trial + 1);
    TrialOutcome out{{Polynomial(ring), {}, trial, 0, {}}, false};
    SuperficialCandidate& cand = out.candidate;
    for (const auto& p : gens) {
        const long a = detail::draw_coefficient(g, bound);
        cand.coefficients.push_back(a);
        cand.element = cand.element + p * ring.from_integer(a);
    }
    auto& ev = cand.evidence;
    // Minimal generators of an equigenerated ideal are independent mod mI.
    const bool outside = !cand.element.is_zero();
    ev.push_back({"x in I \\ mI", outside, outside ? cand.element.to_string() : "all coefficients vanish"});
    if (!outside) return out;
    const MultiplicityOptions mopt = [&] {
        MultiplicityOptions o = opt.multiplicity;
        o.jobs = 1;
        return o;
    }();
    bool ok = detail::validate_superficial(i, m.annihilator(), cand.element, opt.c_cap, mopt, "", cand.c_exponent, ev);
    if (ok && opt.validate_localizations && i.is_monomial() && m.annihilator().is_monomial()) {
        const std::size_t n = ring.nvars();
        for (int k = 1; k <= m.dimension() && ok; ++k) {
            const LambdaSet lam = enumerate_lambda(i, m, k);
            for (const auto& cp : lam.primes) {
                const auto& p = std::get<MonomialPrime>(cp);
                if (p.height() == n || local_c0(i, m, p, mopt) == 0) continue;
                const std::string tag = "at " + p.to_string(ring) + ": ";
                const Polynomial xp = localize_polynomial(cand.element, p);
                if (!xp.is_homogeneous() || xp.is_zero()) {
                    ev.push_back({tag + "localized element graded", true, "skipped: not homogeneous after localization"});
                    continue;
                }
                unsigned cp_exp = 0;
                ok = detail::validate_superficial(localize_at_monomial_prime(i, p), localize_at_monomial_prime(m.annihilator(), p), xp,
                                                  opt.c_cap, mopt, tag, cp_exp, ev);
                if (!ok) break;
            }
        }
    }
    out.accepted = ok;
    return out;
}

/// Lowest-index trial passing every validation.
inline SuperficialCandidate superficial_search(const Ideal& i, const CyclicModule& m, const SuperficialOptions& opt = {}) {
    require_same_ring(i.ring(), m.ring());
    bool nilpotent = true;
    for (const auto& g : i.generators()) nilpotent = nilpotent && m.annihilator().radical_contains(g);
    if (nilpotent)
        throw PreconditionError("analytic spread is 0: I is nilpotent on M");
    std::vector<TrialOutcome> outcomes;
    const unsigned batch = std::max(1u, opt.multiplicity.jobs);
    for (unsigned start = 0; start < opt.trials; start += batch) {
        const unsigned count = std::min(batch, opt.trials - start);
        std::vector<std::optional<TrialOutcome>> slot(count);
        parallel_for(count, batch, [&](std::size_t s) { slot[s] = superficial_trial(i, m, start + static_cast<unsigned>(s), opt); });
        for (auto& s : slot) {
            if (s->accepted) return std::move(s->candidate);
            outcomes.push_back(std::move(*s));
        }
    }
    throw SuperficialSearchFailed("no superficial candidate within " + std::to_string(opt.trials) + " trials", std::move(outcomes));
}

/// Re-runs the candidate's trial and compares the evidence exactly.
inline bool revalidate(const SuperficialCandidate& c, const Ideal& i, const CyclicModule& m, const SuperficialOptions& opt) {
    const TrialOutcome again = superficial_trial(i, m, c.trial, opt);
    return again.accepted && again.candidate.element == c.element && again.candidate.coefficients == c.coefficients &&
           again.candidate.c_exponent == c.c_exponent && again.candidate.evidence == c.evidence;
}

} // namespace gmseq
