#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "hilbert_series.hpp"
#include "monomial.hpp"

namespace gmseq {

/// Monomial ideal held by its minimal generators, sorted by degree and then
/// exponent vector. All operations are combinatorial.
class MonomialIdeal {
public:
    MonomialIdeal() = default;
    explicit MonomialIdeal(std::size_t nvars) : n_(nvars) {}

    MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens) : n_(nvars) {
        for (const auto& g : gens)
            if (g.arity() != nvars) throw RingMismatch("generator arity does not match monomial ideal");
        gens_ = minimalize(std::move(gens));
    }

    static MonomialIdeal unit(std::size_t nvars) { return MonomialIdeal(nvars, {Monomial(nvars)}); }

    /// The homogeneous maximal ideal (x_1, ..., x_n).
    static MonomialIdeal maximal(std::size_t nvars) {
        std::vector<Monomial> g;
        for (std::size_t i = 0; i < nvars; ++i) g.push_back(Monomial::variable_power(nvars, i));
        return MonomialIdeal(nvars, std::move(g));
    }

    /// Prime generated by the variables in `mask`.
    static MonomialIdeal prime(std::size_t nvars, VarMask mask) {
        std::vector<Monomial> g;
        for (std::size_t i = 0; i < nvars; ++i)
            if (mask >> i & 1u) g.push_back(Monomial::variable_power(nvars, i));
        return MonomialIdeal(nvars, std::move(g));
    }

    std::size_t nvars() const noexcept { return n_; }
    const std::vector<Monomial>& generators() const noexcept { return gens_; }
    bool is_zero() const noexcept { return gens_.empty(); }
    bool is_unit() const noexcept { return gens_.size() == 1 && gens_[0].is_one(); }

    bool contains(const Monomial& m) const {
        const VarMask ms = m.support_mask();
        for (const auto& g : gens_) {
            if (g.degree() > m.degree()) break;
            if ((g.support_mask() & ~ms) == 0 && g.divides(m)) return true;
        }
        return false;
    }

    bool contains(const MonomialIdeal& o) const {
        same(o);
        return std::all_of(o.gens_.begin(), o.gens_.end(), [&](const Monomial& g) { return contains(g); });
    }

    friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) { return a.n_ == b.n_ && a.gens_ == b.gens_; }

    friend MonomialIdeal operator+(const MonomialIdeal& a, const MonomialIdeal& b) {
        a.same(b);
        std::vector<Monomial> g = a.gens_;
        g.insert(g.end(), b.gens_.begin(), b.gens_.end());
        return MonomialIdeal(a.n_, std::move(g));
    }

    friend MonomialIdeal operator*(const MonomialIdeal& a, const MonomialIdeal& b) {
        a.same(b);
        std::vector<Monomial> g;
        g.reserve(a.gens_.size() * b.gens_.size());
        for (const auto& x : a.gens_)
            for (const auto& y : b.gens_) g.push_back(x * y);
        return MonomialIdeal(a.n_, std::move(g));
    }

    /// I^k; I^0 is the unit ideal.
    MonomialIdeal power(unsigned k) const {
        MonomialIdeal r = unit(n_);
        for (unsigned i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    MonomialIdeal intersect(const MonomialIdeal& o) const {
        same(o);
        std::vector<Monomial> g;
        g.reserve(gens_.size() * o.gens_.size());
        for (const auto& x : gens_)
            for (const auto& y : o.gens_) g.push_back(lcm(x, y));
        return MonomialIdeal(n_, std::move(g));
    }

    MonomialIdeal colon(const Monomial& m) const {
        std::vector<Monomial> g;
        g.reserve(gens_.size());
        for (const auto& x : gens_) g.push_back(x.colon(m));
        return MonomialIdeal(n_, std::move(g));
    }

    /// I : J = intersection over generators g of J of I : g; I : (0) = (1).
    MonomialIdeal colon(const MonomialIdeal& o) const {
        same(o);
        MonomialIdeal r = unit(n_);
        for (const auto& g : o.gens_) r = r.intersect(colon(g));
        return r;
    }

    /// I : J^infinity, iterating the colon until it stabilizes.
    MonomialIdeal saturate(const MonomialIdeal& o) const {
        MonomialIdeal cur = *this;
        for (;;) {
            MonomialIdeal next = cur.colon(o);
            if (next == cur) return cur;
            cur = std::move(next);
        }
    }

    MonomialIdeal radical() const {
        std::vector<Monomial> g;
        for (const auto& x : gens_) {
            Monomial r(n_);
            for (std::size_t i = 0; i < n_; ++i) r.set(i, x[i] ? 1 : 0);
            g.push_back(r);
        }
        return MonomialIdeal(n_, std::move(g));
    }

    /// Ideal generated by the minimal generators of degree <= d.
    MonomialIdeal truncate_generators(unsigned d) const {
        MonomialIdeal r(n_);
        for (const auto& g : gens_)
            if (g.degree() <= d) r.gens_.push_back(g);
        return r;
    }

    /// Distinct degrees of minimal generators, ascending.
    std::vector<unsigned> generator_degrees() const {
        std::vector<unsigned> d;
        for (const auto& g : gens_)
            if (d.empty() || d.back() != g.degree()) d.push_back(g.degree());
        return d;
    }

    /// Minimal primes as variable masks: the minimal vertex covers of the
    /// generator supports. Sorted by (size, mask). The zero ideal gives {0};
    /// the unit ideal gives no primes.
    std::vector<VarMask> minimal_primes() const {
        if (is_unit()) return {};
        std::vector<VarMask> supports;
        for (const auto& g : gens_) supports.push_back(g.support_mask());
        std::sort(supports.begin(), supports.end(), [](VarMask a, VarMask b) {
            return mask_size(a) != mask_size(b) ? mask_size(a) < mask_size(b) : a < b;
        });
        // Drop supports containing another support: covering the smaller one
        // covers the larger.
        std::vector<VarMask> base;
        for (auto s : supports) {
            bool redundant = false;
            for (auto b : base)
                if ((b & ~s) == 0) {
                    redundant = true;
                    break;
                }
            if (!redundant) base.push_back(s);
        }
        std::vector<VarMask> covers;
        enumerate_covers(base, 0, 0, covers);
        std::sort(covers.begin(), covers.end(), [](VarMask a, VarMask b) {
            return mask_size(a) != mask_size(b) ? mask_size(a) < mask_size(b) : a < b;
        });
        covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
        std::vector<VarMask> minimal;
        for (auto c : covers) {
            bool dominated = false;
            for (auto m : minimal)
                if ((m & ~c) == 0) {
                    dominated = true;
                    break;
                }
            if (!dominated) minimal.push_back(c);
        }
        return minimal;
    }

    /// Krull dimension of k[x]/I. Throws on the unit ideal.
    int dimension() const {
        if (is_unit()) throw PreconditionError("dimension of the unit ideal is undefined");
        auto primes = minimal_primes();
        std::size_t smallest = n_;
        for (auto p : primes) smallest = std::min(smallest, mask_size(p));
        return static_cast<int>(n_ - smallest);
    }

    /// Dimension with the convention dim(0-module) = -1 for the unit ideal.
    int dimension_or_empty() const { return is_unit() ? -1 : dimension(); }

    /// Extension to the localization at the prime on `mask`: variables outside
    /// the mask become units. The result lives in mask_size(mask) variables,
    /// kept in increasing index order.
    MonomialIdeal localize(VarMask mask) const {
        const std::size_t m = mask_size(mask);
        std::vector<Monomial> g;
        for (const auto& x : gens_) {
            Monomial r(m);
            std::size_t k = 0;
            for (std::size_t i = 0; i < n_; ++i)
                if (mask >> i & 1u) r.set(k++, x[i]);
            g.push_back(r);
        }
        return MonomialIdeal(m, std::move(g));
    }

    /// Hilbert series of k[x]/I over the standard grading, by pivot recursion.
    HilbertSeries hilbert_series() const {
        return HilbertSeries{k_polynomial(gens_), static_cast<unsigned>(n_)};
    }

    std::string to_string() const {
        if (gens_.empty()) return "(0)";
        std::string s = "(";
        for (std::size_t k = 0; k < gens_.size(); ++k) {
            if (k) s += ", ";
            s += monomial_text(gens_[k]);
        }
        return s + ")";
    }

    /// Generic text with variables x0, x1, ...
    static std::string monomial_text(const Monomial& m) {
        std::string s;
        for (std::size_t i = 0; i < m.arity(); ++i) {
            if (!m[i]) continue;
            if (!s.empty()) s += '*';
            s += "x" + std::to_string(i);
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s.empty() ? "1" : s;
    }

    /// Minimal elements under divisibility, sorted by (degree, exponents).
    static std::vector<Monomial> minimalize(std::vector<Monomial> g) {
        std::sort(g.begin(), g.end(), [](const Monomial& a, const Monomial& b) {
            auto da = a.degree(), db = b.degree();
            return da != db ? da < db : a < b;
        });
        g.erase(std::unique(g.begin(), g.end()), g.end());
        std::vector<Monomial> kept;
        std::vector<VarMask> masks;
        kept.reserve(g.size());
        for (auto& m : g) {
            const VarMask ms = m.support_mask();
            bool divisible = false;
            for (std::size_t k = 0; k < kept.size(); ++k)
                if ((masks[k] & ~ms) == 0 && kept[k].divides(m)) {
                    divisible = true;
                    break;
                }
            if (!divisible) {
                masks.push_back(ms);
                kept.push_back(std::move(m));
            }
        }
        return kept;
    }

private:
    void same(const MonomialIdeal& o) const {
        if (n_ != o.n_) throw RingMismatch("monomial ideals over different rings");
    }

    static void enumerate_covers(const std::vector<VarMask>& base, std::size_t from, VarMask chosen, std::vector<VarMask>& out) {
        std::size_t i = from;
        while (i < base.size() && (base[i] & chosen)) ++i;
        if (i == base.size()) {
            out.push_back(chosen);
            return;
        }
        for (VarMask rest = base[i]; rest; rest &= rest - 1) {
            VarMask bit = rest & (~rest + 1);
            enumerate_covers(base, i + 1, chosen | bit, out);
        }
    }

    static IntPoly shift(const IntPoly& p, unsigned by) {
        IntPoly r(by, 0);
        r.insert(r.end(), p.begin(), p.end());
        return r;
    }

    static IntPoly add(IntPoly a, const IntPoly& b) {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = detail::checked_add(a[i], b[i]);
        detail::trim(a);
        return a;
    }

    static IntPoly multiply(const IntPoly& a, const IntPoly& b) {
        if (a.empty() || b.empty()) return {};
        IntPoly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::int64_t prod;
                if (__builtin_mul_overflow(a[i], b[j], &prod)) throw ResourceLimit("integer overflow in K-polynomial");
                r[i + j] = detail::checked_add(r[i + j], prod);
            }
        detail::trim(r);
        return r;
    }

    static IntPoly one_minus_t_pow(unsigned d) {
        IntPoly r(d + 1, 0);
        r[0] += 1;
        r[d] -= 1;
        detail::trim(r);
        return r;
    }

    // K-polynomial of k[x]/(gens), gens minimal and sorted by degree.
    static IntPoly k_polynomial(const std::vector<Monomial>& gens) {
        if (gens.empty()) return {1};
        if (gens[0].is_one()) return {};
        if (gens.size() == 1) return one_minus_t_pow(gens[0].degree());
        if (gens.size() == 2) {
            IntPoly r = {1};
            r = add(r, shift({-1}, gens[0].degree()));
            r = add(r, shift({-1}, gens[1].degree()));
            return add(r, shift({1}, lcm(gens[0], gens[1]).degree()));
        }
        // Pairwise coprime generators: product of (1 - t^deg).
        VarMask seen = 0;
        bool coprime = true;
        for (const auto& g : gens) {
            VarMask s = g.support_mask();
            if (s & seen) {
                coprime = false;
                break;
            }
            seen |= s;
        }
        if (coprime) {
            IntPoly r = {1};
            for (const auto& g : gens) r = multiply(r, one_minus_t_pow(g.degree()));
            return r;
        }
        // Pivot x_i^e: i the variable occurring in the most non-pure-power
        // generators, e the median of its exponents there. Some minimal
        // generator has x_i-exponent >= e, so both branches strictly grow.
        const std::size_t n = gens[0].arity();
        std::vector<std::size_t> count(n, 0);
        for (const auto& g : gens) {
            if (g.support_size() < 2) continue;
            for (std::size_t i = 0; i < n; ++i) count[i] += g[i] != 0;
        }
        std::size_t var = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
        std::vector<unsigned> exps;
        for (const auto& g : gens)
            if (g.support_size() >= 2 && g[var]) exps.push_back(g[var]);
        std::nth_element(exps.begin(), exps.begin() + exps.size() / 2, exps.end());
        const unsigned e = exps[exps.size() / 2];
        const Monomial pivot = Monomial::variable_power(n, var, e);

        std::vector<Monomial> plus;
        plus.reserve(gens.size() + 1);
        for (const auto& g : gens)
            if (!pivot.divides(g)) plus.push_back(g);
        plus.push_back(pivot);
        std::vector<Monomial> quo;
        quo.reserve(gens.size());
        for (const auto& g : gens) quo.push_back(g.colon(pivot));

        return add(k_polynomial(minimalize(std::move(plus))), shift(k_polynomial(minimalize(std::move(quo))), e));
    }

    std::size_t n_ = 0;
    std::vector<Monomial> gens_;
};

} // namespace gmseq
