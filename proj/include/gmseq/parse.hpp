#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "error.hpp"
#include "polynomial.hpp"

namespace gmseq {

namespace detail {

// Recursive-descent reader for
//   poly  := sign? term (('+'|'-') term)*
//   term  := coeff? ('*'? var ('^' uint)?)*
//   coeff := int ('/' uint)?
// with blanks allowed between tokens.
class PolyParser {
public:
    PolyParser(std::string_view text, const PolyRing& ring) : s_(text), ring_(ring) {}

    Polynomial parse() {
        std::vector<Term> terms;
        skip();
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
            skip();
        }
        terms.push_back(term(negative));
        skip();
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c != '+' && c != '-') fail("expected '+' or '-'");
            ++pos_;
            skip();
            terms.push_back(term(c == '-'));
            skip();
        }
        return Polynomial::from_terms(ring_, std::move(terms));
    }

private:
    Term term(bool negative) {
        const std::size_t start = pos_;
        Coefficient coef = ring_.one();
        bool have_coef = false;
        if (is_digit(peek())) {
            coef = coefficient();
            have_coef = true;
            skip();
        }
        Monomial mono = ring_.unit_monomial();
        bool have_factor = false;
        for (;;) {
            std::size_t save = pos_;
            bool star = false;
            if (peek() == '*') {
                star = true;
                ++pos_;
                skip();
            }
            if (!PolyRing::is_alpha(peek())) {
                if (star) fail("expected variable after '*'");
                pos_ = save;
                break;
            }
            if (star && !have_coef && !have_factor) fail("term cannot start with '*'");
            const std::size_t name_at = pos_;
            std::string name = identifier();
            auto idx = ring_.index_of(name);
            if (!idx) fail_at("unknown variable '" + name + "'", name_at);
            skip();
            unsigned e = 1;
            if (peek() == '^') {
                ++pos_;
                skip();
                e = exponent();
                skip();
            }
            mono.set(*idx, mono[*idx] + e);
            have_factor = true;
        }
        if (!have_coef && !have_factor) fail_at("expected a term", start);
        if (negative) coef = -coef;
        return {mono, coef};
    }

    Coefficient coefficient() {
        const std::size_t at = pos_;
        mpz_class num(digits(), 10);
        mpz_class den = 1;
        skip();
        if (peek() == '/') {
            ++pos_;
            skip();
            if (!is_digit(peek())) fail("expected unsigned integer denominator");
            den = mpz_class(digits(), 10);
        }
        const auto p = ring_.characteristic();
        if (den == 0) fail_at("coefficient not in field: zero denominator", at);
        if (p == 0) return Coefficient::rational(mpq_class(num, den));
        if (den % static_cast<unsigned long>(p) == 0)
            fail_at("coefficient not in field: denominator divisible by characteristic", at);
        return Coefficient::modular(num, p) / Coefficient::modular(den, p);
    }

    unsigned exponent() {
        const std::size_t at = pos_;
        if (!is_digit(peek())) fail("non-integer exponent");
        std::string d = digits();
        if (peek() == '.' || peek() == '/') fail_at("non-integer exponent", at);
        if (d.size() > 5 || std::stoul(d) > 0xffffu) fail_at("exponent too large", at);
        return static_cast<unsigned>(std::stoul(d));
    }

    std::string digits() {
        std::size_t b = pos_;
        while (is_digit(peek())) ++pos_;
        return std::string(s_.substr(b, pos_ - b));
    }

    std::string identifier() {
        std::size_t b = pos_;
        ++pos_;
        while (PolyRing::is_alpha(peek()) || is_digit(peek()) || peek() == '_') ++pos_;
        return std::string(s_.substr(b, pos_ - b));
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
    }
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }

    [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
    [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

    std::string_view s_;
    const PolyRing& ring_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Reads a polynomial in the text grammar. Throws ParseError with the byte
/// offset of the first problem.
inline Polynomial parse_polynomial(std::string_view text, const PolyRing& ring) {
    return detail::PolyParser(text, ring).parse();
}

} // namespace gmseq
