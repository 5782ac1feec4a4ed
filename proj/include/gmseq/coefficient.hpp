#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>

#include <gmpxx.h>

#include "error.hpp"

namespace gmseq {

/// Largest supported prime characteristic; products of two residues fit in 64 bits.
inline constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t f = 3; f * f <= p; f += 2)
        if (p % f == 0) return false;
    return true;
}

/// Element of F_p with p stored alongside the residue.
struct ModInt {
    std::uint64_t value = 0;
    std::uint64_t modulus = 2;

    friend bool operator==(const ModInt&, const ModInt&) = default;
};

namespace detail {

inline std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

} // namespace detail

/// Exact field element: a rational in lowest terms (characteristic 0) or a
/// residue in [0, p). Mixing characteristics throws RingMismatch.
class Coefficient {
public:
    Coefficient() : v_(mpq_class(0)) {}

    static Coefficient rational(mpq_class q) {
        q.canonicalize();
        Coefficient c;
        c.v_ = std::move(q);
        return c;
    }

    static Coefficient rational(long num, unsigned long den = 1) {
        return rational(mpq_class(num, den));
    }

    /// Residue of `v` modulo the prime `p`.
    static Coefficient modular(const mpz_class& v, std::uint64_t p) {
        mpz_class r = v % mpz_class(static_cast<unsigned long>(p));
        if (r < 0) r += static_cast<unsigned long>(p);
        Coefficient c;
        c.v_ = ModInt{r.get_ui(), p};
        return c;
    }

    static Coefficient modular(long v, std::uint64_t p) { return modular(mpz_class(v), p); }

    /// The integer `v` embedded in the field of characteristic `p` (0 for Q).
    static Coefficient from_integer(const mpz_class& v, std::uint64_t p) {
        return p == 0 ? rational(mpq_class(v)) : modular(v, p);
    }

    static Coefficient from_integer(long v, std::uint64_t p) { return from_integer(mpz_class(v), p); }

    std::uint64_t characteristic() const {
        if (auto m = std::get_if<ModInt>(&v_)) return m->modulus;
        return 0;
    }

    bool is_zero() const {
        if (auto m = std::get_if<ModInt>(&v_)) return m->value == 0;
        return sgn(std::get<mpq_class>(v_)) == 0;
    }

    bool is_one() const {
        if (auto m = std::get_if<ModInt>(&v_)) return m->value == 1;
        return std::get<mpq_class>(v_) == 1;
    }

    const mpq_class& as_rational() const { return std::get<mpq_class>(v_); }
    const ModInt& as_modular() const { return std::get<ModInt>(v_); }

    Coefficient operator-() const {
        Coefficient c = *this;
        if (auto m = std::get_if<ModInt>(&c.v_)) {
            if (m->value) m->value = m->modulus - m->value;
        } else {
            auto& q = std::get<mpq_class>(c.v_);
            q = -q;
        }
        return c;
    }

    Coefficient inverse() const {
        if (is_zero()) throw PreconditionError("division by zero coefficient");
        if (auto m = std::get_if<ModInt>(&v_))
            return from_mod(detail::mod_pow(m->value, m->modulus - 2, m->modulus), m->modulus);
        return rational(1 / std::get<mpq_class>(v_));
    }

    Coefficient& operator+=(const Coefficient& o) {
        if (auto m = std::get_if<ModInt>(&v_)) {
            const auto& n = o.mod_checked(m->modulus);
            m->value = (m->value + n.value) % m->modulus;
        } else {
            std::get<mpq_class>(v_) += o.rat_checked();
        }
        return *this;
    }

    Coefficient& operator-=(const Coefficient& o) {
        if (auto m = std::get_if<ModInt>(&v_)) {
            const auto& n = o.mod_checked(m->modulus);
            m->value = (m->value + m->modulus - n.value) % m->modulus;
        } else {
            std::get<mpq_class>(v_) -= o.rat_checked();
        }
        return *this;
    }

    Coefficient& operator*=(const Coefficient& o) {
        if (auto m = std::get_if<ModInt>(&v_)) {
            const auto& n = o.mod_checked(m->modulus);
            m->value = m->value * n.value % m->modulus;
        } else {
            std::get<mpq_class>(v_) *= o.rat_checked();
        }
        return *this;
    }

    Coefficient& operator/=(const Coefficient& o) { return *this *= o.inverse(); }

    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
    friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
    friend Coefficient operator/(Coefficient a, const Coefficient& b) { return a /= b; }

    friend bool operator==(const Coefficient& a, const Coefficient& b) {
        if (a.v_.index() != b.v_.index()) return false;
        if (auto m = std::get_if<ModInt>(&a.v_)) return *m == std::get<ModInt>(b.v_);
        return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
    }

    /// Canonical text: "3", "-3/4"; residues print as their representative in [0, p).
    std::string to_string() const {
        if (auto m = std::get_if<ModInt>(&v_)) return std::to_string(m->value);
        return std::get<mpq_class>(v_).get_str();
    }

    /// True when the printed form starts with '-' (only possible over Q).
    bool is_negative() const {
        if (std::holds_alternative<ModInt>(v_)) return false;
        return sgn(std::get<mpq_class>(v_)) < 0;
    }

    friend std::ostream& operator<<(std::ostream& os, const Coefficient& c) { return os << c.to_string(); }

private:
    static Coefficient from_mod(std::uint64_t v, std::uint64_t p) {
        Coefficient c;
        c.v_ = ModInt{v, p};
        return c;
    }

    const ModInt& mod_checked(std::uint64_t p) const {
        auto m = std::get_if<ModInt>(&v_);
        if (!m || m->modulus != p) throw RingMismatch("coefficient characteristic mismatch");
        return *m;
    }

    const mpq_class& rat_checked() const {
        auto q = std::get_if<mpq_class>(&v_);
        if (!q) throw RingMismatch("coefficient characteristic mismatch");
        return *q;
    }

    std::variant<mpq_class, ModInt> v_;
};

} // namespace gmseq
