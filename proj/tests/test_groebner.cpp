#include "absconic/error.hpp"
#include "absconic/groebner.hpp"

#include <gtest/gtest.h>

#include <random>

namespace absconic {
namespace {

std::vector<MPoly> polys(const Vars& v, std::initializer_list<const char*> texts)
{
    std::vector<MPoly> out;
    for (const char* t : texts) out.push_back(parse_poly(t, v));
    return out;
}

bool is_reduced(const Ideal& g)
{
    for (std::size_t a = 0; a < g.generators().size(); ++a) {
        for (std::size_t b = 0; b < g.generators().size(); ++b) {
            if (a == b) continue;
            Monomial lb = leading_monomial(g.generators()[b], g.order(), g.block());
            for (const auto& [m, c] : g.generators()[a].terms()) {
                if (lb.divides(m)) return false;
            }
        }
    }
    return true;
}

TEST(Groebner, TrivialBases)
{
    const Vars xy = make_vars({"x", "y"});
    Ideal a = groebner(Ideal(xy, polys(xy, {"y", "x"}), TermOrder::Lex));
    ASSERT_EQ(a.generators().size(), 2U);
    EXPECT_EQ(a.generators()[0], parse_poly("y", xy));
    EXPECT_EQ(a.generators()[1], parse_poly("x", xy));

    const Vars x = make_vars({"x"});
    Ideal b = groebner(Ideal(x, polys(x, {"x^2-1", "x-1"})));
    ASSERT_EQ(b.generators().size(), 1U);
    EXPECT_EQ(b.generators()[0], parse_poly("x-1", x));

    Ideal unit = groebner(Ideal(xy, polys(xy, {"x*y-1", "x"})));
    EXPECT_TRUE(unit.is_unit());
    EXPECT_EQ(dimension(unit), -1);
}

TEST(Groebner, CyclicThreeLex)
{
    const Vars v = make_vars({"x", "y", "z"});
    Ideal g = groebner(Ideal(v, polys(v, {"x+y+z", "x*y+y*z+z*x", "x*y*z-1"}), TermOrder::Lex));
    // Classical answer: {x+y+z, y^2+y*z+z^2, z^3-1}.
    ASSERT_EQ(g.generators().size(), 3U);
    EXPECT_EQ(g.generators()[0], parse_poly("z^3-1", v));
    EXPECT_EQ(g.generators()[1], parse_poly("y^2+y*z+z^2", v));
    EXPECT_EQ(g.generators()[2], parse_poly("x+y+z", v));
    EXPECT_EQ(dimension(g), 0);
}

TEST(Groebner, ModularAgreesWithExact)
{
    const Vars v = make_vars({"x", "y", "z"});
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> coef(-9, 9);
    for (TermOrder ord : {TermOrder::GrevLex, TermOrder::Lex}) {
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<MPoly> gens;
            for (int k = 0; k < 3; ++k) {
                MPoly f(v);
                for (const char* m : {"x^2", "x*y", "y*z", "z^2", "x", "y", "z", "1"}) {
                    f += parse_poly(m, v) * GaussRat(coef(rng));
                }
                gens.push_back(f);
            }
            Ideal in(v, gens, ord);
            Ideal fast = groebner(in);
            Ideal slow = groebner_exact(in);
            EXPECT_EQ(fast.generators(), slow.generators());
            EXPECT_TRUE(is_reduced(fast));
            for (const auto& g : gens) EXPECT_TRUE(contains(fast, g));
            // Rerunning on a basis is the identity.
            Ideal again = groebner(Ideal(v, fast.generators(), ord));
            EXPECT_EQ(again.generators(), fast.generators());
        }
    }
}

TEST(Groebner, GaussianCoefficients)
{
    const Vars v = make_vars({"x", "y"});
    Ideal g = groebner(Ideal(v, polys(v, {"x^2+1", "y - i*x"}), TermOrder::Lex));
    Ideal e = groebner_exact(Ideal(v, polys(v, {"x^2+1", "y - i*x"}), TermOrder::Lex));
    EXPECT_EQ(g.generators(), e.generators());
    EXPECT_TRUE(contains(g, parse_poly("y^2 - 1", v)));
    EXPECT_TRUE(contains(g, parse_poly("x*y + i", v)));
    EXPECT_FALSE(contains(g, parse_poly("x*y - i", v)));
}

TEST(Eliminate, ParabolaImplicitization)
{
    const Vars v = make_vars({"t", "x", "y"});
    std::string drop[] = {"t"};
    Ideal e = eliminate(Ideal(v, polys(v, {"x - t", "y - t^2"})), drop);
    ASSERT_EQ(e.generators().size(), 1U);
    EXPECT_TRUE(proportional(e.generators()[0], parse_poly("y - x^2", e.vars())));
    EXPECT_EQ(e.vars()->size(), 2U);
}

TEST(Eliminate, UnitAndEmptyDrop)
{
    const Vars v = make_vars({"t", "x"});
    std::string drop[] = {"t"};
    EXPECT_TRUE(eliminate(Ideal(v, polys(v, {"t*x - 1", "x"})), drop).is_unit());
    Ideal in(v, polys(v, {"t^2 - x", "t*x - 1"}));
    Ideal none = eliminate(in, std::span<const std::string>{});
    EXPECT_EQ(none.generators(), groebner(in).generators());
    std::string bad[] = {"q"};
    EXPECT_THROW(eliminate(in, bad), DomainError);
}

TEST(Saturate, RemovesComponent)
{
    // (x*y, x*z) : x^inf = (y, z).
    const Vars v = make_vars({"x", "y", "z"});
    Ideal s = saturate(Ideal(v, polys(v, {"x*y", "x*z"})), parse_poly("x", v));
    ASSERT_EQ(s.generators().size(), 2U);
    EXPECT_TRUE(contains(s, parse_poly("y", v)));
    EXPECT_TRUE(contains(s, parse_poly("z", v)));
    EXPECT_EQ(dimension(Ideal(v, polys(v, {"x*y", "x*z"}))), 2);
    EXPECT_EQ(dimension(s), 1);
}

TEST(Dimension, Counts)
{
    const Vars v = make_vars({"x", "y", "z"});
    EXPECT_EQ(dimension(Ideal(v, {})), 3);
    EXPECT_EQ(dimension(Ideal(v, polys(v, {"x^2+y^2-z^2"}))), 2);
    EXPECT_EQ(dimension(Ideal(v, polys(v, {"x-1", "y-2", "z"}))), 0);
}

}  // namespace
}  // namespace absconic
