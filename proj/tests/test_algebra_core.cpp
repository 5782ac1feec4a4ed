#include <gtest/gtest.h>

#include <random>

#include "gmseq/parse.hpp"
#include "gmseq/polynomial.hpp"

using namespace gmseq;

namespace {

PolyRing qxy() { return PolyRing({"x", "y"}); }

Polynomial P(const std::string& s, const PolyRing& r) { return parse_polynomial(s, r); }

Polynomial random_poly(std::mt19937_64& g, const PolyRing& r) {
    std::uniform_int_distribution<int> nterms(0, 4), exp(0, 3), coef(-6, 6), den(1, 3);
    std::vector<Term> t;
    for (int k = nterms(g); k > 0; --k) {
        Monomial m(r.nvars());
        for (std::size_t i = 0; i < r.nvars(); ++i) m.set(i, exp(g));
        if (r.characteristic())
            t.push_back({m, Coefficient::from_integer(coef(g), r.characteristic())});
        else
            t.push_back({m, Coefficient::rational(coef(g), den(g))});
    }
    return Polynomial::from_terms(r, std::move(t));
}

Monomial random_monomial(std::mt19937_64& g, std::size_t n) {
    std::uniform_int_distribution<int> exp(0, 4);
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, exp(g));
    return m;
}

} // namespace

TEST(Coefficient, RationalsInLowestTerms) {
    auto c = Coefficient::rational(6, 4);
    EXPECT_EQ(c.as_rational(), mpq_class(3, 2));
    EXPECT_EQ((Coefficient::rational(1, 3) + Coefficient::rational(2, 3)), Coefficient::rational(1));
    EXPECT_EQ(Coefficient::rational(-2, 4).to_string(), "-1/2");
}

TEST(Coefficient, PrimeFieldArithmetic) {
    auto a = Coefficient::from_integer(-1, 7);
    EXPECT_EQ(a.as_modular().value, 6u);
    EXPECT_EQ((a * a.inverse()), Coefficient::from_integer(1, 7));
    EXPECT_THROW((void)(a + Coefficient::rational(1)), RingMismatch);
    EXPECT_THROW((void)Coefficient::from_integer(0, 7).inverse(), PreconditionError);
}

TEST(Parse, SpecExamples) {
    auto r = qxy();
    auto p = P("x^2 - 2*x*y", r);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p.terms()[0].monomial, (Monomial{2, 0}));
    EXPECT_EQ(p.terms()[0].coefficient, Coefficient::rational(1));
    EXPECT_EQ(p.terms()[1].monomial, (Monomial{1, 1}));
    EXPECT_EQ(p.terms()[1].coefficient, Coefficient::rational(-2));
    EXPECT_TRUE(P("0", r).is_zero());
    auto two_x = P("x + x", r);
    ASSERT_EQ(two_x.size(), 1u);
    EXPECT_EQ(two_x.terms()[0].coefficient, Coefficient::rational(2));
}

TEST(Parse, Juxtaposition) {
    auto r = qxy();
    EXPECT_EQ(P("3x^2y", r), P("3*x^2*y", r));
    EXPECT_EQ(P("-1/2 x y + 1", r), P("1 - 1/2*x*y", r));
    EXPECT_EQ(P(" x ^ 3 ", r), P("x^3", r));
}

TEST(Parse, ErrorsCarryOffsets) {
    auto r = qxy();
    try {
        P("x + z", r);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
        EXPECT_NE(std::string(e.what()).find("unknown variable"), std::string::npos);
    }
    EXPECT_THROW(P("x^-1", r), ParseError);
    EXPECT_THROW(P("x^1.5", r), ParseError);
    EXPECT_THROW(P("x y +", r), ParseError);
    EXPECT_THROW(P("1/0", r), ParseError);
    EXPECT_THROW(P("1/7 x", PolyRing({"x"}, 7)), ParseError);
    EXPECT_EQ(P("1/2 x", PolyRing({"x"}, 7)), P("4x", PolyRing({"x"}, 7)));
}

TEST(Ring, Validation) {
    EXPECT_THROW(PolyRing({"x", "x"}), PreconditionError);
    EXPECT_THROW(PolyRing({"1x"}), PreconditionError);
    EXPECT_THROW(PolyRing({"x"}, 9), PreconditionError);
    EXPECT_NO_THROW(PolyRing({"x_1", "Y2"}, 101));
}

TEST(PolyArith, SpecExamples) {
    auto r = qxy();
    EXPECT_EQ(P("x+y", r) * P("x-y", r), P("x^2-y^2", r));
    EXPECT_EQ(P("x+y", r) + P("0", r), P("x+y", r));
    EXPECT_EQ(P("x+y", r).pow(2), P("x^2+2x*y+y^2", r));
    EXPECT_EQ(P("x", r) * Coefficient::rational(3), P("3x", r));
    EXPECT_THROW((void)(P("x", r) + P("x", PolyRing({"x", "z"}))), RingMismatch);
}

TEST(OrderCompare, SpecExamples) {
    auto grevlex = MonomialOrder::grevlex();
    auto lex = MonomialOrder::lex();
    EXPECT_EQ(grevlex.compare(Monomial{2, 0}, Monomial{1, 1}), std::strong_ordering::greater);
    EXPECT_EQ(grevlex.compare(Monomial{1, 1}, Monomial{1, 1}), std::strong_ordering::equal);
    EXPECT_EQ(lex.compare(Monomial{0, 3}, Monomial{1, 0}), std::strong_ordering::less);
    EXPECT_THROW((void)grevlex.compare(Monomial{1}, Monomial{1, 0}), RingMismatch);
    // grevlex tie-break on the last variable: x*z < y^2.
    EXPECT_EQ(grevlex.compare(Monomial{1, 0, 1}, Monomial{0, 2, 0}), std::strong_ordering::less);
    auto elim = MonomialOrder::elimination(1);
    EXPECT_EQ(elim.compare(Monomial{1, 0, 0}, Monomial{0, 5, 5}), std::strong_ordering::greater);
}

TEST(MonomialType, LimitsAndDivision) {
    EXPECT_THROW(Monomial(33), ResourceLimit);
    EXPECT_THROW((Monomial{70000}), ResourceLimit);
    EXPECT_THROW((void)(Monomial{1, 0} / Monomial{0, 1}), EngineError);
    EXPECT_EQ((Monomial{3, 1} / Monomial{1, 1}), (Monomial{2, 0}));
}

TEST(Properties, RingAxiomsExact) {
    std::mt19937_64 g(11);
    for (auto ch : {0u, 101u}) {
        PolyRing r({"x", "y", "z"}, ch);
        for (int trial = 0; trial < 200; ++trial) {
            auto f = random_poly(g, r), h = random_poly(g, r), k = random_poly(g, r);
            EXPECT_EQ((f + h) + k, f + (h + k));
            EXPECT_EQ(f * (h + k), f * h + f * k);
            EXPECT_EQ(f * h, h * f);
            EXPECT_TRUE((f - f).is_zero());
        }
    }
}

TEST(Properties, ParsePrintRoundTrip) {
    std::mt19937_64 g(12);
    for (auto ch : {0u, 7u}) {
        PolyRing r({"x", "y", "z"}, ch);
        for (int trial = 0; trial < 300; ++trial) {
            auto f = random_poly(g, r);
            auto once = P(f.to_string(), r);
            EXPECT_EQ(once, f) << f.to_string();
            EXPECT_EQ(once.to_string(), f.to_string());
        }
    }
}

TEST(Properties, OrdersAreMultiplicativeTotalOrders) {
    std::mt19937_64 g(13);
    for (auto ord : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::elimination(2)}) {
        for (int trial = 0; trial < 500; ++trial) {
            auto a = random_monomial(g, 4), b = random_monomial(g, 4), c = random_monomial(g, 4);
            auto ab = ord.compare(a, b);
            EXPECT_EQ(ab, 0 <=> ord.compare(b, a));
            EXPECT_EQ(ab == 0, a == b);
            if (ab <= 0 && ord.compare(b, c) <= 0) {
                EXPECT_TRUE(ord.compare(a, c) <= 0);
            }
            if (ab <= 0) {
                EXPECT_TRUE(ord.compare(a * c, b * c) <= 0);
            }
            EXPECT_TRUE(ord.compare(a * c, a) >= 0);
        }
    }
}
