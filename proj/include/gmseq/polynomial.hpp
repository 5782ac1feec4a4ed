#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coefficient.hpp"
#include "error.hpp"
#include "monomial.hpp"

namespace gmseq {

class Polynomial;

/// k[x_1..x_n] with k = Q or F_p and a fixed term order. Cheap to copy;
/// two rings are equal when names, characteristic and order agree.
class PolyRing {
public:
    PolyRing() : PolyRing(std::vector<std::string>{}) {}

    explicit PolyRing(std::vector<std::string> variables, std::uint64_t characteristic = 0,
                      MonomialOrder order = MonomialOrder::grevlex()) {
        if (variables.size() > kMaxVariables) throw ResourceLimit("too many variables (max 32)");
        for (std::size_t i = 0; i < variables.size(); ++i) {
            if (!valid_name(variables[i])) throw PreconditionError("invalid variable name '" + variables[i] + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (variables[i] == variables[j])
                    throw PreconditionError("duplicate variable name '" + variables[i] + "'");
        }
        if (characteristic != 0 && (!is_prime(characteristic) || characteristic > kMaxPrime))
            throw PreconditionError("characteristic must be 0 or a prime below 2^31");
        data_ = std::make_shared<const Data>(Data{std::move(variables), characteristic, order});
    }

    std::size_t nvars() const noexcept { return data_->variables.size(); }
    const std::vector<std::string>& variables() const noexcept { return data_->variables; }
    const std::string& variable_name(std::size_t i) const { return data_->variables.at(i); }
    std::uint64_t characteristic() const noexcept { return data_->characteristic; }
    const MonomialOrder& order() const noexcept { return data_->order; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < nvars(); ++i)
            if (data_->variables[i] == name) return i;
        return std::nullopt;
    }

    Coefficient from_integer(long v) const { return Coefficient::from_integer(v, characteristic()); }
    Coefficient zero() const { return from_integer(0); }
    Coefficient one() const { return from_integer(1); }

    Monomial unit_monomial() const { return Monomial(nvars()); }

    /// Same variables and field with a different term order.
    PolyRing with_order(MonomialOrder order) const { return PolyRing(variables(), characteristic(), order); }

    /// Ring on the listed variables (in the given order), graded reverse lex.
    PolyRing subring(const std::vector<std::size_t>& indices) const {
        std::vector<std::string> names;
        for (auto i : indices) names.push_back(variable_name(i));
        return PolyRing(std::move(names), characteristic());
    }

    friend bool operator==(const PolyRing& a, const PolyRing& b) {
        return a.data_ == b.data_ || (a.data_->variables == b.data_->variables &&
                                      a.data_->characteristic == b.data_->characteristic &&
                                      a.data_->order == b.data_->order);
    }

    static bool valid_name(const std::string& s) {
        if (s.empty() || !is_alpha(s[0])) return false;
        return std::all_of(s.begin() + 1, s.end(), [](char c) { return is_alpha(c) || (c >= '0' && c <= '9') || c == '_'; });
    }

    static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

private:
    struct Data {
        std::vector<std::string> variables;
        std::uint64_t characteristic;
        MonomialOrder order;
    };
    std::shared_ptr<const Data> data_;
};

inline void require_same_ring(const PolyRing& a, const PolyRing& b) {
    if (!(a == b)) throw RingMismatch("operands belong to different rings");
}

struct Term {
    Monomial monomial;
    Coefficient coefficient;
};

/// Finite sum of terms with nonzero coefficients, sorted strictly
/// decreasing in the ring's term order.
class Polynomial {
public:
    explicit Polynomial(PolyRing ring) : ring_(std::move(ring)) {}

    /// Normalizes arbitrary input: collects like terms, drops zeros, sorts.
    static Polynomial from_terms(PolyRing ring, std::vector<Term> terms) {
        Polynomial p(std::move(ring));
        const auto& ord = p.ring_.order();
        for (const auto& t : terms)
            if (t.monomial.arity() != p.ring_.nvars()) throw RingMismatch("term arity does not match ring");
        std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return ord.compare(a.monomial, b.monomial) > 0; });
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
                p.terms_.back().coefficient += t.coefficient;
                if (p.terms_.back().coefficient.is_zero()) p.terms_.pop_back();
            } else if (!t.coefficient.is_zero()) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    static Polynomial term(PolyRing ring, Monomial m, Coefficient c) {
        Polynomial p(std::move(ring));
        if (m.arity() != p.ring_.nvars()) throw RingMismatch("term arity does not match ring");
        if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    static Polynomial monomial(PolyRing ring, Monomial m) {
        auto one = ring.one();
        return term(std::move(ring), std::move(m), std::move(one));
    }

    static Polynomial constant(PolyRing ring, Coefficient c) {
        auto m = ring.unit_monomial();
        return term(std::move(ring), std::move(m), std::move(c));
    }

    static Polynomial variable(PolyRing ring, std::size_t i) {
        auto m = Monomial::variable_power(ring.nvars(), i);
        return monomial(std::move(ring), std::move(m));
    }

    const PolyRing& ring() const noexcept { return ring_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    const Term& leading_term() const {
        if (terms_.empty()) throw PreconditionError("leading term of zero polynomial");
        return terms_.front();
    }
    const Monomial& leading_monomial() const { return leading_term().monomial; }
    const Coefficient& leading_coefficient() const { return leading_term().coefficient; }

    /// Single term (coefficient arbitrary).
    bool is_monomial() const noexcept { return terms_.size() == 1; }

    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

    /// Zero counts as homogeneous.
    bool is_homogeneous() const noexcept {
        if (terms_.empty()) return true;
        const unsigned d = terms_.front().monomial.degree();
        return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.monomial.degree() == d; });
    }

    /// Maximum total degree; -1 for zero.
    int degree() const noexcept {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.monomial.degree()));
        return d;
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coefficient = -t.coefficient;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return a.merge(b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a.merge(b, true); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        require_same_ring(a.ring_, b.ring_);
        if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
        if (b.is_monomial()) return a.times_term(b.terms_[0].monomial, b.terms_[0].coefficient);
        if (a.is_monomial()) return b.times_term(a.terms_[0].monomial, a.terms_[0].coefficient);
        std::unordered_map<Monomial, Coefficient, MonomialHash> acc;
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) {
                auto m = s.monomial * t.monomial;
                auto c = s.coefficient * t.coefficient;
                auto [it, fresh] = acc.try_emplace(std::move(m), c);
                if (!fresh) it->second += c;
            }
        std::vector<Term> terms;
        terms.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!c.is_zero()) terms.push_back({m, std::move(c)});
        return from_terms(a.ring_, std::move(terms));
    }

    friend Polynomial operator*(const Polynomial& a, const Coefficient& c) { return a.times_term(a.ring_.unit_monomial(), c); }
    friend Polynomial operator*(const Coefficient& c, const Polynomial& a) { return a * c; }

    /// this * c * m; the order is multiplicative so no re-sort is needed.
    Polynomial times_term(const Monomial& m, const Coefficient& c) const {
        Polynomial r(ring_);
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            auto coef = t.coefficient * c;
            if (!coef.is_zero()) r.terms_.push_back({t.monomial * m, std::move(coef)});
        }
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(ring_, ring_.one());
        Polynomial b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    /// Scaled so the leading coefficient is 1; zero stays zero.
    Polynomial monic() const {
        if (is_zero() || leading_coefficient().is_one()) return *this;
        return *this * leading_coefficient().inverse();
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (!(a.ring_ == b.ring_) || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].monomial == b.terms_[i].monomial) || !(a.terms_[i].coefficient == b.terms_[i].coefficient))
                return false;
        return true;
    }

    /// Text in the input grammar, e.g. "x^2 - 2*x*y + 3/2".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            const auto& t = terms_[k];
            Coefficient c = t.coefficient;
            bool neg = c.is_negative();
            if (neg) c = -c;
            if (k == 0) {
                if (neg) out += '-';
            } else {
                out += neg ? " - " : " + ";
            }
            std::string mono = monomial_string(t.monomial);
            if (mono.empty()) {
                out += c.to_string();
            } else {
                if (!c.is_one()) out += c.to_string() + "*";
                out += mono;
            }
        }
        return out;
    }

    std::string monomial_string(const Monomial& m) const {
        std::string s;
        for (std::size_t i = 0; i < m.arity(); ++i) {
            if (!m[i]) continue;
            if (!s.empty()) s += '*';
            s += ring_.variable_name(i);
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

    /// Raw access for engine internals that preserve the sorted invariant.
    std::vector<Term>& mutable_terms() noexcept { return terms_; }

private:
    Polynomial merge(const Polynomial& b, bool subtract) const {
        require_same_ring(ring_, b.ring_);
        const auto& ord = ring_.order();
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < terms_.size() && ord.compare(terms_[i].monomial, b.terms_[j].monomial) > 0)) {
                r.terms_.push_back(terms_[i++]);
            } else if (i == terms_.size() || ord.compare(terms_[i].monomial, b.terms_[j].monomial) < 0) {
                auto t = b.terms_[j++];
                if (subtract) t.coefficient = -t.coefficient;
                r.terms_.push_back(std::move(t));
            } else {
                auto c = subtract ? terms_[i].coefficient - b.terms_[j].coefficient : terms_[i].coefficient + b.terms_[j].coefficient;
                if (!c.is_zero()) r.terms_.push_back({terms_[i].monomial, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    PolyRing ring_;
    std::vector<Term> terms_;
};

} // namespace gmseq
