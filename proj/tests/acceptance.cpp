// Acceptance gate: one PASS/FAIL line per criterion. Integer quantities are
// compared exactly; the only pinned tolerances are the wall-clock limits.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gmseq/cli/corpus.hpp"
#include "gmseq/cli/problem.hpp"
#include "gmseq/gmseq.hpp"

using namespace gmseq;

namespace {

constexpr double kLimitGolden = 1.0;
constexpr double kLimitCollapse = 120.0;
constexpr double kLimitFormula = 600.0;
constexpr double kLimitReduction = 300.0;

constexpr std::uint64_t kSeedCollapse = 0x2001;
constexpr std::uint64_t kSeedFormula = 0x3001;
constexpr std::uint64_t kSeedReduction = 0x5001;
constexpr std::uint64_t kSeedShift = 0x6001;
constexpr std::uint64_t kSeedSuperficial = 0x7001;
constexpr std::uint64_t kSeedExtraction = 0x8001;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string join(const std::vector<std::int64_t>& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + ")";
}

PolyRing ring(std::size_t n) {
    static const char* names[] = {"x", "y", "z"};
    return PolyRing(std::vector<std::string>(names, names + n));
}

Monomial random_monomial(std::mt19937_64& g, std::size_t n, unsigned lo, unsigned hi) {
    Monomial m(n);
    const unsigned d = std::uniform_int_distribution<unsigned>(lo, hi)(g);
    std::uniform_int_distribution<std::size_t> var(0, n - 1);
    for (unsigned s = 0; s < d; ++s) {
        const auto v = var(g);
        m.set(v, m[v] + 1);
    }
    return m;
}

Monomial random_monomial_of_degree(std::mt19937_64& g, std::size_t n, unsigned d) { return random_monomial(g, n, d, d); }

Ideal monomial_ideal(const PolyRing& r, const std::vector<Monomial>& gens) {
    return Ideal::from_monomial(r, MonomialIdeal(r.nvars(), gens));
}

struct Input {
    Ideal i;
    CyclicModule m;
};

std::string describe(const Input& in) {
    const std::string k = in.m.annihilator().is_zero() ? "(0)" : in.m.annihilator().to_string();
    return "I=" + in.i.to_string() + " K=" + k + " in " + std::to_string(in.i.ring().nvars()) + " vars";
}

/// Monomial I with het > 0 on R/K, K = (0) or a monomial ideal of dim >= 1.
std::vector<Input> formula_suite(std::size_t count) {
    std::mt19937_64 g(kSeedFormula);
    std::vector<Input> out;
    while (out.size() < count) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(g);
        const PolyRing r = ring(n);
        std::vector<Monomial> ig;
        for (int s = std::uniform_int_distribution<int>(1, 4)(g); s > 0; --s) ig.push_back(random_monomial(g, n, 1, 3));
        Ideal k(r);
        if (g() % 2) {
            std::vector<Monomial> kg;
            for (int s = std::uniform_int_distribution<int>(1, 2)(g); s > 0; --s) kg.push_back(random_monomial(g, n, 1, 3));
            k = monomial_ideal(r, kg);
            if (krull_dimension(k) < 1) continue;
        }
        const Input in{monomial_ideal(r, ig), CyclicModule(k)};
        if (height_on_module(in.i, in.m) <= 0) continue;
        out.push_back(in);
    }
    return out;
}

Outcome golden() {
    const PolyRing r({"x", "y"});
    const Ideal i = Ideal::parse(r, {"x"});
    const auto m = CyclicModule::free(r);
    Outcome o;
    const auto table = bigraded_hilbert_function(i, m, 8, 8);
    for (unsigned u = 0; u <= 8; ++u)
        for (unsigned v = 0; v <= 8; ++v)
            if (table.at(u, v) != static_cast<std::int64_t>((u + 1) * (v + 1))) {
                o.pass = false;
                o.detail = "h(" + std::to_string(u) + "," + std::to_string(v) + ") != (u+1)(v+1)";
                return o;
            }
    const auto rep = verify_formula(i, m);
    const bool seq = rep.lhs.c == std::vector<std::int64_t>{0, 1, 0};
    const bool k1 = rep.terms.size() == 3 && rep.terms[1].rhs == 1 && rep.terms[1].support == std::vector<std::string>{"(x)"};
    o.pass = seq && k1 && rep.all_match();
    o.detail = "c=" + join(rep.lhs.c) + ", h(u,v)=(u+1)(v+1) on 9x9, RHS_1 from (x) = " + std::to_string(rep.terms[1].rhs);
    return o;
}

Outcome collapse() {
    std::mt19937_64 g(kSeedCollapse);
    Outcome o;
    int checked = 0;
    for (; checked < 50; ++checked) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(g);
        const PolyRing r = ring(n);
        std::vector<Monomial> gens;
        for (std::size_t v = 0; v < n; ++v) gens.push_back(Monomial::variable_power(n, v, std::uniform_int_distribution<unsigned>(1, 4)(g)));
        for (int s = std::uniform_int_distribution<int>(0, 2)(g); s > 0; --s) gens.push_back(random_monomial(g, n, 1, 4));
        const Ideal i = monomial_ideal(r, gens);
        const auto m = CyclicModule::free(r);
        const auto s = multiplicity_sequence(i, m);
        const auto e = classical_multiplicity(i, m);
        bool ok = s[0] == e;
        for (int k = 1; k <= s.d; ++k) ok = ok && s[k] == 0;
        if (!ok) {
            o.pass = false;
            o.detail = describe({i, m}) + ": c=" + join(s.c) + " e=" + std::to_string(e);
            return o;
        }
    }
    o.detail = std::to_string(checked) + " m-primary ideals, c_0 = e and c_k = 0 for k >= 1";
    return o;
}

Outcome formula(const std::vector<Input>& suite) {
    Outcome o;
    int matched = 0, mismatched = 0, indeterminate = 0;
    std::vector<std::string> examples;
    for (const auto& in : suite) {
        const auto rep = verify_formula(in.i, in.m);
        if (rep.all_match()) {
            ++matched;
            continue;
        }
        if (!rep.any_mismatch()) {
            ++indeterminate;
            examples.push_back(describe(in) + ": indeterminate");
            continue;
        }
        ++mismatched;
        for (const auto& t : rep.terms)
            if (t.verdict == Verdict::mismatch && examples.size() < 3)
                examples.push_back(describe(in) + ": k=" + std::to_string(t.k) + " c_k=" + std::to_string(t.lhs) +
                                   " local sum=" + std::to_string(t.rhs));
    }
    o.pass = mismatched == 0 && indeterminate == 0;
    o.detail = std::to_string(matched) + "/" + std::to_string(suite.size()) + " match, " + std::to_string(mismatched) + " mismatch, " +
               std::to_string(indeterminate) + " indeterminate";
    for (const auto& e : examples) o.detail += "\n      " + e;
    return o;
}

Outcome vanishing(const std::vector<Input>& suite) {
    Outcome o;
    int with_ell = 0;
    for (const auto& in : suite) {
        const auto s = multiplicity_sequence(in.i, in.m);
        const int q = dimension_mod_ideal(in.i, in.m);
        const int ell = analytic_spread(in.i, in.m);
        ++with_ell;
        for (int k = 0; k <= s.d; ++k)
            if ((k > q || k < s.d - ell) && s[k] != 0) {
                o.pass = false;
                o.detail = describe(in) + ": c=" + join(s.c) + " q=" + std::to_string(q) + " ell=" + std::to_string(ell);
                return o;
            }
    }
    o.detail = std::to_string(suite.size()) + " inputs with c_i = 0 for i > q; analytic spread computed on " + std::to_string(with_ell);
    return o;
}

std::vector<std::pair<Ideal, Ideal>> random_pairs(cli::CorpusKind kind, std::uint64_t seed, std::size_t count, std::size_t nvars,
                                                  std::vector<CyclicModule>& modules) {
    cli::CorpusOptions opt;
    opt.kind = kind;
    opt.seed = seed;
    opt.count = count;
    opt.nvars = nvars;
    opt.max_degree = 3;
    std::vector<std::pair<Ideal, Ideal>> out;
    for (const auto& doc : cli::generate_corpus(opt)) {
        const auto p = cli::parse_problem(doc);
        out.emplace_back(p.i, *p.j);
        modules.push_back(cli::module_of(p));
    }
    return out;
}

Outcome reduction() {
    Outcome o;
    const PolyRing r({"x", "y"});
    const CyclicModule free(Ideal(r), true);
    const Ideal i = Ideal::parse(r, {"x^2", "y^2"});
    const auto a = rees_criterion(i, Ideal::parse(r, {"x^2", "x*y", "y^2"}), free);
    const auto b = rees_criterion(i, Ideal::maximal(r), free);
    const bool curated = a.seq_i == a.seq_j && a.direct.reduced_at == 1u && a.verdict == ReductionVerdict::reduction &&
                         b.seq_i.c == std::vector<std::int64_t>{4, 0, 0} && b.seq_j.c == std::vector<std::int64_t>{1, 0, 0} &&
                         b.verdict == ReductionVerdict::not_reduction && a.consistent && b.consistent;
    if (!curated) {
        o.pass = false;
        o.detail = "curated pairs disagree";
        return o;
    }
    std::vector<CyclicModule> modules;
    auto pairs = random_pairs(cli::CorpusKind::reduction_pair, kSeedReduction, 8, 2, modules);
    auto more = random_pairs(cli::CorpusKind::reduction_pair, kSeedReduction + 1, 7, 3, modules);
    pairs.insert(pairs.end(), more.begin(), more.end());
    more = random_pairs(cli::CorpusKind::pair, kSeedReduction + 2, 8, 2, modules);
    pairs.insert(pairs.end(), more.begin(), more.end());
    more = random_pairs(cli::CorpusKind::pair, kSeedReduction + 3, 7, 3, modules);
    pairs.insert(pairs.end(), more.begin(), more.end());
    int reductions = 0, decided = 0;
    for (std::size_t s = 0; s < pairs.size(); ++s) {
        const auto& [pi, pj] = pairs[s];
        const auto rep = rees_criterion(pi, pj, modules[s]);
        const bool forward = !rep.direct.reduced_at || rep.seq_i == rep.seq_j;
        if (!forward || !rep.consistent) {
            o.pass = false;
            o.detail = "I=" + pi.to_string() + " J=" + pj.to_string() + ": " + to_string(rep.verdict) + ", direct " +
                       (rep.direct.reduced_at ? "reduced" : "not within n_max");
            return o;
        }
        if (rep.direct.reduced_at) ++reductions;
        if (rep.verdict != ReductionVerdict::indeterminate) ++decided;
    }
    o.detail = "curated pairs ok; " + std::to_string(pairs.size()) + " random pairs consistent (" + std::to_string(reductions) +
               " reductions, " + std::to_string(decided) + " decided by the criterion)";
    return o;
}

Outcome shift() {
    std::mt19937_64 g(kSeedShift);
    Outcome o;
    int inputs = 0, literal_off = 0;
    while (inputs < 20) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 3)(g);
        const PolyRing r = ring(n);
        std::vector<Monomial> ig;
        for (int s = std::uniform_int_distribution<int>(1, 3)(g); s > 0; --s) ig.push_back(random_monomial(g, n, 1, 2));
        Ideal k(r);
        if (g() % 2) k = monomial_ideal(r, {random_monomial(g, n, 2, 3)});
        const Ideal i = monomial_ideal(r, ig);
        if (k.contains(i)) continue;
        ++inputs;
        const CyclicModule m(k);
        const unsigned U = 5, V = 5;
        BigradedHilbertFunction base(i, m);
        const auto h = base.table(U, V + 3);
        bool literal_holds = true;
        for (unsigned p = 1; p <= 3; ++p) {
            const auto hn = bigraded_hilbert_function(i, Subquotient(i.power(p) + k, k), U, V);
            for (unsigned u = 0; u <= U; ++u)
                for (unsigned v = 0; v <= V; ++v) {
                    if (hn.at(u, v) != h.at(u, v + p) - h.at(u, p - 1)) {
                        o.pass = false;
                        o.detail = describe({i, m}) + ": n=" + std::to_string(p) + " fails at (" + std::to_string(u) + "," + std::to_string(v) + ")";
                        return o;
                    }
                    std::int64_t column = 0;
                    for (unsigned a = 0; a <= u; ++a) column += base.component(a, p);
                    if (h.at(u, v + p) - h.at(u, p) != hn.at(u, v) - column) {
                        o.pass = false;
                        o.detail = describe({i, m}) + ": literal form is not off by the j=n column";
                        return o;
                    }
                    literal_holds = literal_holds && column == 0;
                }
        }
        if (!literal_holds) ++literal_off;
    }
    o.detail = "h_{I,I^nM}(u,v) = h(u,v+n) - h(u,n-1) exactly for n=1..3 on " + std::to_string(inputs) +
               " inputs; the form with h(u,n) is off by the j=n column on " + std::to_string(literal_off) + " of them";
    return o;
}

Outcome superficial() {
    std::mt19937_64 g(kSeedSuperficial);
    Outcome o;
    int inputs = 0;
    unsigned worst_trial = 0;
    while (inputs < 20) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 3)(g);
        const PolyRing r = ring(n);
        const unsigned deg = std::uniform_int_distribution<unsigned>(1, 3)(g);
        std::vector<Monomial> ig;
        for (int s = std::uniform_int_distribution<int>(1, 4)(g); s > 0; --s) ig.push_back(random_monomial_of_degree(g, n, deg));
        Ideal k(r);
        if (g() % 2) k = monomial_ideal(r, {random_monomial(g, n, 2, 3)});
        const Ideal i = monomial_ideal(r, ig);
        const CyclicModule m(k);
        if (m.dimension() < 2 || analytic_spread(i, m) <= 0) continue;
        ++inputs;
        SuperficialOptions opt;
        opt.trials = 10;
        opt.seed = g();
        try {
            const auto c = superficial_search(i, m, opt);
            worst_trial = std::max(worst_trial, c.trial);
            if (!revalidate(c, i, m, opt)) {
                o.pass = false;
                o.detail = describe({i, m}) + ": evidence did not re-validate";
                return o;
            }
        } catch (const SuperficialSearchFailed&) {
            o.pass = false;
            o.detail = describe({i, m}) + ": no candidate within 10 trials";
            return o;
        }
    }
    o.detail = std::to_string(inputs) + " inputs with d >= 2 and analytic spread > 0; latest accepted trial index " + std::to_string(worst_trial) +
               "; all evidence re-validated";
    return o;
}

std::int64_t binom(int n, int k) {
    std::int64_t r = 1;
    for (int s = 1; s <= k; ++s) r = r * (n - k + s) / s;
    return r;
}

Outcome extraction() {
    std::mt19937_64 g(kSeedExtraction);
    Outcome o;
    for (int trial = 0; trial < 200; ++trial) {
        const int d = trial % 5;
        std::uniform_int_distribution<int> coef(-6, 6), top(0, 9);
        std::vector<std::int64_t> c(d + 1);
        for (auto& x : c) x = top(g);
        std::vector<std::vector<int>> lower(d + 1, std::vector<int>(d + 1, 0));
        for (int a = 0; a <= d; ++a)
            for (int b = 0; a + b < d; ++b) lower[a][b] = coef(g);
        const int size = d + 8;
        std::vector<std::vector<std::int64_t>> h(size, std::vector<std::int64_t>(size));
        for (int u = 0; u < size; ++u)
            for (int v = 0; v < size; ++v) {
                std::int64_t val = 0;
                for (int k = 0; k <= d; ++k) val += c[k] * binom(u, k) * binom(v, d - k);
                for (int a = 0; a <= d; ++a)
                    for (int b = 0; a + b < d; ++b) val += lower[a][b] * binom(u, a) * binom(v, b);
                h[u][v] = val;
            }
        const auto s = extract_multiplicity_sequence(BigradedHilbertTable::synthetic(h, d));
        if (s.c != c) {
            o.pass = false;
            o.detail = "trial " + std::to_string(trial) + ": expected " + join(c) + " got " + join(s.c);
            return o;
        }
    }
    o.detail = "200 synthetic tables of degree <= 4 recovered exactly";
    return o;
}

bool report(int n, const std::string& name, double limit, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing;
    if (limit > 0) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2fs, limit %.0fs", secs, limit);
        timing = buf;
        if (secs >= limit) o.pass = false;
    } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2fs", secs);
        timing = buf;
    }
    std::printf("criterion %d: %s  %s [%s]\n    %s\n", n, o.pass ? "PASS" : "FAIL", name.c_str(), timing.c_str(), o.detail.c_str());
    std::fflush(stdout);
    return o.pass;
}

} // namespace

int main() {
    bool ok = true;
    ok &= report(1, "principal ideal golden case", kLimitGolden, golden);
    ok &= report(2, "finite colength collapse", kLimitCollapse, collapse);
    std::vector<Input> suite;
    ok &= report(3, "local formula on 100 random inputs with het > 0", kLimitFormula, [&] {
        suite = formula_suite(100);
        return formula(suite);
    });
    ok &= report(4, "vanishing bounds", 0, [&] { return vanishing(suite); });
    ok &= report(5, "reduction equivalence", kLimitReduction, reduction);
    ok &= report(6, "shift identity", 0, shift);
    ok &= report(7, "superficial elements", 0, superficial);
    ok &= report(8, "extraction oracle", 0, extraction);
    std::printf("acceptance: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}
