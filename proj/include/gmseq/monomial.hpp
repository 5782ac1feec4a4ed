#pragma once

#include <algorithm>
#include <bit>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "error.hpp"

namespace gmseq {

/// Rings larger than this are rejected at construction.
inline constexpr std::size_t kMaxVariables = 32;

/// Subset of variables encoded as a bitmask (bit i = variable i).
using VarMask = std::uint32_t;

/// Dense exponent vector stored inline. Arity is part of the value.
class Monomial {
public:
    using exponent_type = std::uint16_t;

    Monomial() = default;

    explicit Monomial(std::size_t nvars) : n_(check_arity(nvars)) {}

    Monomial(std::initializer_list<unsigned> exps) : n_(check_arity(exps.size())) {
        std::size_t i = 0;
        for (unsigned e : exps) e_[i++] = narrow(e);
    }

    explicit Monomial(std::span<const unsigned> exps) : n_(check_arity(exps.size())) {
        for (std::size_t i = 0; i < exps.size(); ++i) e_[i] = narrow(exps[i]);
    }

    /// x_i^e in `nvars` variables.
    static Monomial variable_power(std::size_t nvars, std::size_t i, unsigned e = 1) {
        Monomial m(nvars);
        m.e_[i] = narrow(e);
        return m;
    }

    std::size_t arity() const noexcept { return n_; }
    unsigned operator[](std::size_t i) const noexcept { return e_[i]; }
    void set(std::size_t i, unsigned e) { e_[i] = narrow(e); }

    unsigned degree() const noexcept {
        unsigned d = 0;
        for (std::size_t i = 0; i < n_; ++i) d += e_[i];
        return d;
    }

    bool is_one() const noexcept {
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i]) return false;
        return true;
    }

    /// Number of variables with positive exponent.
    std::size_t support_size() const noexcept {
        std::size_t s = 0;
        for (std::size_t i = 0; i < n_; ++i) s += e_[i] != 0;
        return s;
    }

    /// Bitmask of variables with positive exponent.
    VarMask support_mask() const noexcept {
        VarMask m = 0;
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i]) m |= VarMask{1} << i;
        return m;
    }

    bool divides(const Monomial& o) const noexcept {
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    bool coprime(const Monomial& o) const noexcept {
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] && o.e_[i]) return false;
        return true;
    }

    Monomial& operator*=(const Monomial& o) {
        same_arity(o);
        for (std::size_t i = 0; i < n_; ++i) e_[i] = narrow(unsigned{e_[i]} + o.e_[i]);
        return *this;
    }

    friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

    /// Exact quotient; `o` must divide `*this`.
    Monomial operator/(const Monomial& o) const {
        same_arity(o);
        Monomial r(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (o.e_[i] > e_[i]) throw EngineError("monomial division without divisibility");
            r.e_[i] = static_cast<exponent_type>(e_[i] - o.e_[i]);
        }
        return r;
    }

    /// Colon quotient m : o = m / gcd(m, o).
    Monomial colon(const Monomial& o) const {
        Monomial r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            r.e_[i] = static_cast<exponent_type>(e_[i] > o.e_[i] ? e_[i] - o.e_[i] : 0);
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        a.same_arity(b);
        Monomial r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
        return r;
    }

    friend Monomial gcd(const Monomial& a, const Monomial& b) {
        a.same_arity(b);
        Monomial r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] = std::min(a.e_[i], b.e_[i]);
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
        if (a.n_ != b.n_) return false;
        for (std::size_t i = 0; i < a.n_; ++i)
            if (a.e_[i] != b.e_[i]) return false;
        return true;
    }

    /// Plain lexicographic order on exponent vectors; used for canonical
    /// containers, never as a term order.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        for (std::size_t i = 0; i < a.n_; ++i)
            if (auto c = a.e_[i] <=> b.e_[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    std::size_t hash() const noexcept {
        std::size_t h = n_;
        for (std::size_t i = 0; i < n_; ++i) h = h * 1000003u ^ e_[i];
        return h;
    }

    std::vector<unsigned> exponents() const { return {e_.begin(), e_.begin() + n_}; }

private:
    static std::uint8_t check_arity(std::size_t n) {
        if (n > kMaxVariables) throw ResourceLimit("too many variables (max 32)");
        return static_cast<std::uint8_t>(n);
    }

    static exponent_type narrow(unsigned e) {
        if (e > 0xffffu) throw ResourceLimit("exponent exceeds 65535");
        return static_cast<exponent_type>(e);
    }

    void same_arity(const Monomial& o) const {
        if (n_ != o.n_) throw RingMismatch("monomial arity mismatch");
    }

    std::uint8_t n_ = 0;
    std::array<exponent_type, kMaxVariables> e_{};
};

inline std::size_t mask_size(VarMask m) { return static_cast<std::size_t>(std::popcount(m)); }

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Term orders. `elimination` is the block order that compares the first
/// `block` variables by graded reverse lex and breaks ties on the rest by
/// graded reverse lex; it eliminates the first block.
class MonomialOrder {
public:
    enum class Kind { grevlex, lex, elimination };

    constexpr MonomialOrder() = default;
    static constexpr MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, 0); }
    static constexpr MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
    static constexpr MonomialOrder elimination(std::size_t block) { return MonomialOrder(Kind::elimination, block); }

    constexpr Kind kind() const noexcept { return kind_; }
    constexpr std::size_t block() const noexcept { return block_; }

    friend constexpr bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

    /// Three-way comparison; arity mismatch throws.
    std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
        if (a.arity() != b.arity()) throw RingMismatch("monomial arity mismatch in order comparison");
        const std::size_t n = a.arity();
        switch (kind_) {
        case Kind::lex:
            for (std::size_t i = 0; i < n; ++i)
                if (a[i] != b[i]) return a[i] <=> b[i];
            return std::strong_ordering::equal;
        case Kind::grevlex:
            return grevlex_range(a, b, 0, n);
        case Kind::elimination: {
            const std::size_t k = std::min(block_, n);
            if (auto c = grevlex_range(a, b, 0, k); c != 0) return c;
            return grevlex_range(a, b, k, n);
        }
        }
        return std::strong_ordering::equal;
    }

    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

private:
    constexpr MonomialOrder(Kind k, std::size_t b) : kind_(k), block_(b) {}

    static std::strong_ordering grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        unsigned da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a[i];
            db += b[i];
        }
        if (da != db) return da <=> db;
        for (std::size_t i = hi; i-- > lo;)
            if (a[i] != b[i]) return b[i] <=> a[i];
        return std::strong_ordering::equal;
    }

    Kind kind_ = Kind::grevlex;
    std::size_t block_ = 0;
};

} // namespace gmseq
