#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace gmseq {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ResourceLimit("integer overflow in Hilbert series arithmetic");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw ResourceLimit("integer overflow in Hilbert series arithmetic");
    return r;
}

inline __int128 checked_mul128(__int128 a, __int128 b) {
    __int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ResourceLimit("integer overflow in Hilbert function evaluation");
    return r;
}

/// C(n, k) for n >= 0.
inline __int128 binomial128(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < k) return 0;
    if (k > n - k) k = n - k;
    __int128 r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = checked_mul128(r, n - k + i) / i;
    return r;
}

inline std::int64_t narrow128(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw ResourceLimit("Hilbert function value exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

inline void trim(std::vector<std::int64_t>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

} // namespace detail

/// Integer polynomial in t, coefficient k at index k.
using IntPoly = std::vector<std::int64_t>;

/// Series numerator(t) / (1 - t)^denominator_exponent with an unreduced
/// numerator (the K-polynomial when the exponent is the number of variables).
struct HilbertSeries {
    IntPoly numerator;
    unsigned denominator_exponent = 0;

    friend bool operator==(const HilbertSeries&, const HilbertSeries&) = default;

    std::int64_t numerator_at_one() const {
        std::int64_t s = 0;
        for (auto c : numerator) s = detail::checked_add(s, c);
        return s;
    }

    /// All (1 - t) factors cancelled. The zero series stays zero with exponent 0.
    HilbertSeries reduced() const {
        HilbertSeries r = *this;
        detail::trim(r.numerator);
        if (r.numerator.empty()) {
            r.denominator_exponent = 0;
            return r;
        }
        while (r.denominator_exponent > 0 && r.numerator_at_one() == 0) {
            r.numerator = divide_one_minus_t(r.numerator).value();
            --r.denominator_exponent;
        }
        return r;
    }

    /// Krull dimension of the graded module with this series: the pole
    /// order at t = 1; -1 for the zero module.
    int dimension() const {
        auto r = reduced();
        if (r.numerator.empty()) return -1;
        return static_cast<int>(r.denominator_exponent);
    }

    /// Degree (multiplicity): reduced numerator evaluated at 1.
    std::int64_t degree() const { return reduced().numerator_at_one(); }

    /// Coefficient of t^d in the expansion, i.e. the Hilbert function at d.
    std::int64_t coefficient(std::int64_t d) const {
        if (d < 0) return 0;
        const std::int64_t n = denominator_exponent;
        __int128 acc = 0;
        for (std::size_t k = 0; k < numerator.size() && static_cast<std::int64_t>(k) <= d; ++k) {
            if (!numerator[k]) continue;
            const std::int64_t m = d - static_cast<std::int64_t>(k);
            __int128 b = n == 0 ? (m == 0 ? 1 : 0) : detail::binomial128(m + n - 1, n - 1);
            acc += detail::checked_mul128(b, numerator[k]);
        }
        return detail::narrow128(acc);
    }

    /// Exact division by (1 - t); nullopt when p(1) != 0.
    static std::optional<IntPoly> divide_one_minus_t(const IntPoly& p) {
        // p = (1 - t) q  <=>  q_k = p_0 + ... + p_k, with p(1) = 0.
        IntPoly q(p.size(), 0);
        std::int64_t run = 0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            run = detail::checked_add(run, p[k]);
            q[k] = run;
        }
        if (run != 0) return std::nullopt;
        detail::trim(q);
        return q;
    }

    std::string to_string() const {
        std::string s = "(";
        bool first = true;
        for (std::size_t k = 0; k < numerator.size(); ++k) {
            if (!numerator[k]) continue;
            auto c = numerator[k];
            if (!first) s += c < 0 ? " - " : " + ";
            else if (c < 0) s += "-";
            auto a = c < 0 ? -c : c;
            if (k == 0 || a != 1) s += std::to_string(a);
            if (k > 0) s += (k == 1 ? std::string("t") : "t^" + std::to_string(k));
            first = false;
        }
        if (first) s += "0";
        s += ")/(1-t)^" + std::to_string(denominator_exponent);
        return s;
    }
};

inline IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
    IntPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = detail::checked_sub(r[i], b[i]);
    detail::trim(r);
    return r;
}

/// lambda(A/B) from HS(R/A) and HS(R/B) with B contained in A: the difference
/// HS(R/B) - HS(R/A) must be a polynomial; its value at 1 is the length.
/// Returns nullopt when A/B has infinite length.
inline std::optional<std::int64_t> finite_length_between(const HilbertSeries& quotient_by_a, const HilbertSeries& quotient_by_b) {
    if (quotient_by_a.denominator_exponent != quotient_by_b.denominator_exponent)
        throw RingMismatch("Hilbert series over different rings");
    IntPoly diff = poly_sub(quotient_by_b.numerator, quotient_by_a.numerator);
    for (unsigned k = 0; k < quotient_by_a.denominator_exponent; ++k) {
        if (diff.empty()) return 0;
        auto q = HilbertSeries::divide_one_minus_t(diff);
        if (!q) return std::nullopt;
        diff = std::move(*q);
    }
    std::int64_t s = 0;
    for (auto c : diff) s = detail::checked_add(s, c);
    return s;
}

} // namespace gmseq
