#include "absconic/algebra.hpp"
#include "absconic/error.hpp"

#include <gtest/gtest.h>

#include <random>

namespace absconic {
namespace {

const Vars kXYZ = make_vars({"x", "y", "z"});

MPoly P(const std::string& s, const Vars& v = kXYZ) { return parse_poly(s, v); }

/// Ternary quartic whose dual picture calibration is worked out in the
/// literature (coefficients transcribed exactly).
const char* kExampleQuartic =
    "x^4 + (-81/32*y^2 - 32/81*y*z - 8/9*z^2)*x^2 + 6561/4096*y^4 + 1/2*y^3*z - 10/9*y^2*z^2"
    " - 1755136/77058945*y*z^3 + 3008303104/905057309025*z^4";

MPoly random_form(std::mt19937& rng, unsigned degree, const Vars& vars, int density = 60)
{
    std::uniform_int_distribution<long> coef(-5, 5);
    std::uniform_int_distribution<int> keep(0, 99);
    std::vector<MPoly::Term> terms;
    for (unsigned a = 0; a <= degree; ++a) {
        for (unsigned b = 0; a + b <= degree; ++b) {
            if (keep(rng) >= density) continue;
            Monomial m;
            m.e[0] = static_cast<std::uint16_t>(a);
            m.e[1] = static_cast<std::uint16_t>(b);
            m.e[2] = static_cast<std::uint16_t>(degree - a - b);
            terms.emplace_back(m, GaussRat(coef(rng)));
        }
    }
    return MPoly::from_terms(vars, std::move(terms));
}

QMatrix random_matrix(std::mt19937& rng)
{
    std::uniform_int_distribution<long> coef(-3, 3);
    QMatrix m(3, 3);
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) m(r, c) = GaussRat(coef(rng));
    }
    return m;
}

TEST(MPoly, ParsePrintAndArithmetic)
{
    MPoly f = P("(x+y)^2 - 2*x*y");
    EXPECT_EQ(f, P("x^2 + y^2"));
    EXPECT_EQ(P(f.to_string()), f);
    EXPECT_EQ(P("(1+2*i)*x").terms().front().second, GaussRat(Rat(1), Rat(2)));
    EXPECT_TRUE(P("x^3*y + z^4").is_homogeneous());
    EXPECT_FALSE(P("x^3 + z").is_homogeneous());
    EXPECT_THROW(P("x + 0.5"), ParseError);
    EXPECT_THROW(P("x + q"), ParseError);
}

TEST(MPoly, NormalizationMakesScaleLiteral)
{
    MPoly f = P("6*x^2 - 4*x*y + 2/3*z^2");
    MPoly g = f * GaussRat(Rat(-7, 5));
    EXPECT_EQ(f.normalized(), g.normalized());
    EXPECT_EQ(f.normalized(), P("9*x^2 - 6*x*y + z^2"));
    MPoly h = f * GaussRat(Rat(2), Rat(3));
    EXPECT_EQ(h.normalized(), f.normalized());
    EXPECT_TRUE(proportional(f, h));
}

TEST(ComposeLinear, IdentityAndEvenForm)
{
    EXPECT_EQ(compose_linear(P("x^2+y^2"), QMatrix::identity(3)), P("x^2+y^2"));
    QMatrix flip{{GaussRat(-1), GaussRat(0), GaussRat(0)},
                 {GaussRat(0), GaussRat(-1), GaussRat(0)},
                 {GaussRat(0), GaussRat(0), GaussRat(1)}};
    EXPECT_EQ(compose_linear(P("x^2"), flip), P("x^2"));
}

TEST(ComposeLinear, ExampleQuarticHasSignFlipSymmetry)
{
    QMatrix s{{GaussRat(-1), GaussRat(0), GaussRat(0)},
              {GaussRat(0), GaussRat(1), GaussRat(0)},
              {GaussRat(0), GaussRat(0), GaussRat(1)}};
    MPoly f = P(kExampleQuartic);
    EXPECT_EQ(compose_linear(f, s), f);
}

TEST(ComposeLinear, DimensionMismatchThrows)
{
    EXPECT_THROW(compose_linear(P("x^2"), QMatrix::identity(4)), DomainError);
}

TEST(ComposeLinear, ComposesAsMatrixProduct)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        MPoly f = random_form(rng, 3, kXYZ);
        QMatrix a = random_matrix(rng);
        QMatrix b = random_matrix(rng);
        EXPECT_EQ(compose_linear(compose_linear(f, a), b), compose_linear(f, a * b));
        EXPECT_TRUE(compose_linear(f, a).is_homogeneous());
    }
}

TEST(Resultant, SmallCases)
{
    const Vars xy = make_vars({"x", "y"});
    EXPECT_EQ(resultant(P("x-1", xy), P("x-2", xy), "x"), P("-1", xy));
    EXPECT_EQ(resultant(P("x^2-y^2", xy), P("x-y", xy), "x"), MPoly(xy));
    // Res_x(ax^2+bx+c, 2ax+b) = -a * disc.
    const Vars v = make_vars({"x", "a", "b", "c"});
    EXPECT_EQ(resultant(P("a*x^2+b*x+c", v), P("2*a*x+b", v), "x"), P("4*a^2*c - a*b^2", v));
    EXPECT_THROW(resultant(MPoly(xy), P("x", xy), "x"), DomainError);
}

TEST(Resultant, IsMultiplicative)
{
    const Vars v = make_vars({"x", "y"});
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> coef(-4, 4);
    auto rand_poly = [&](int dx) {
        std::vector<MPoly::Term> t;
        for (int a = 0; a <= dx; ++a) {
            for (int b = 0; b <= 2; ++b) {
                Monomial m;
                m.e[0] = static_cast<std::uint16_t>(a);
                m.e[1] = static_cast<std::uint16_t>(b);
                t.emplace_back(m, GaussRat(coef(rng)));
            }
        }
        Monomial lead;
        lead.e[0] = static_cast<std::uint16_t>(dx);
        t.emplace_back(lead, GaussRat(7));
        return MPoly::from_terms(v, std::move(t));
    };
    for (int trial = 0; trial < 6; ++trial) {
        MPoly f = rand_poly(2);
        MPoly g = rand_poly(1);
        MPoly h = rand_poly(2);
        EXPECT_EQ(resultant(f, g * h, 0), resultant(f, g, 0) * resultant(f, h, 0));
    }
}

TEST(Discriminant, QuadraticConvention)
{
    const Vars v = make_vars({"x", "b", "c"});
    EXPECT_EQ(discriminant(P("x^2+b*x+c", v), "x"), P("b^2-4*c", v));
    const Vars wu = make_vars({"w", "u"});
    EXPECT_EQ(discriminant(P("(w-u)^2", wu), "w"), MPoly(wu));
    EXPECT_THROW(discriminant(P("w+u", wu), "w"), DomainError);
}

TEST(Discriminant, TorusFromItsCenter)
{
    // Frozen by an independent computer-algebra run (expand + factor):
    //   disc_w = 589824 (x^2+y^2)^2 (x^2+y^2-3z^2)^2 (x^2+y^2+z^2)^2.
    const Vars v = make_vars({"x", "y", "z", "w"});
    MPoly torus = P("(x^2+y^2+z^2+3*w^2)^2 - 16*(x^2+y^2)*w^2", v);
    MPoly d = discriminant(torus, "w");
    EXPECT_EQ(d, P("589824*(x^2+y^2)^2*(x^2+y^2-3*z^2)^2*(x^2+y^2+z^2)^2", v));
    EXPECT_EQ(d.total_degree(), 12);
    MPoly sq = squarefree_part(d);
    EXPECT_EQ(sq.total_degree(), 6);
    EXPECT_EQ(sq, P("(x^2+y^2)*(x^2+y^2-3*z^2)*(x^2+y^2+z^2)", v).normalized());
}

TEST(Gcd, BasicCases)
{
    EXPECT_EQ(gcd(P("(x+y)^2*z"), P("(x+y)*(x-z)")), P("x+y"));
    EXPECT_EQ(gcd(P("x^2+y^2"), P("x+z")), P("1"));
    EXPECT_EQ(gcd(P("(x^2+y^2)*(x-y)^3"), P("(x^2+y^2)^2*(x-y)")), P("(x^2+y^2)*(x-y)").normalized());
    EXPECT_EQ(gcd(P("(x+i*y)*(x-z)"), P("(x+i*y)*(x+z)")), P("x+i*y").normalized());
}

TEST(SquarefreePart, Examples)
{
    EXPECT_EQ(squarefree_part(P("(x+y)^2*z")), P("(x+y)*z").normalized());
    MPoly irr = P("x^3 + y^3 - x*y*z");
    EXPECT_EQ(squarefree_part(irr), irr.normalized());
    EXPECT_THROW(squarefree_part(MPoly(kXYZ)), DomainError);
}

TEST(SquarefreePart, IsIdempotent)
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        MPoly a = random_form(rng, 2, kXYZ);
        MPoly b = random_form(rng, 1, kXYZ);
        if (a.is_zero() || b.is_zero()) continue;
        MPoly f = a * a * b;
        MPoly s = squarefree_part(f);
        EXPECT_EQ(squarefree_part(s), s);
        EXPECT_TRUE(divides(s, f));
    }
}

TEST(Multiplicity, CountsRepeatedFactors)
{
    EXPECT_EQ(multiplicity(P("(x+y)^3*(x-z)"), P("x+y")), 3U);
    EXPECT_EQ(multiplicity(P("(x+y)^3*(x-z)"), P("x+2*y")), 0U);
}

TEST(PerfectSquareRoot, Examples)
{
    auto r = perfect_square_root(P("x^2 + 2*x*y + y^2"));
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, P("x+y"));
    EXPECT_FALSE(perfect_square_root(P("x^2 + y^2")).has_value());
    EXPECT_FALSE(perfect_square_root(P("x^3")).has_value());
    auto s = perfect_square_root(P("-3*(x - 2*z)^2*(y+i*z)^2"));
    ASSERT_TRUE(s.has_value());
    EXPECT_TRUE(proportional(*s, P("(x-2*z)*(y+i*z)")));
}

TEST(PerfectSquareRoot, RecoversRandomRoots)
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        MPoly q = random_form(rng, 3, kXYZ);
        if (q.is_zero()) continue;
        auto r = perfect_square_root(q * q * GaussRat(Rat(5, 3)));
        ASSERT_TRUE(r.has_value());
        EXPECT_TRUE(proportional(*r, q));
        EXPECT_EQ(*r, q.normalized());
    }
}

TEST(HessianDet, Examples)
{
    EXPECT_EQ(hessian_det(P("x^2+y^2+z^2")), P("8"));
    EXPECT_EQ(hessian_det(P("x^2")), MPoly(kXYZ));
    const Vars v = make_vars({"x", "y", "z", "a1", "a2", "a3", "a4"});
    MPoly q = P("a1*x^2 + a2*y^2 + a3*y*z + a4*z^2", v);
    EXPECT_EQ(hessian_det(q), P("2*a1*(4*a2*a4 - a3^2)", v));
    EXPECT_THROW(hessian_det(P("x^3")), DomainError);
}

TEST(Determinant, BareissMatchesExpansion)
{
    const Vars v = make_vars({"a", "b", "c", "d"});
    PolyMatrix m(2, 2, MPoly(v));
    m(0, 0) = P("a", v);
    m(0, 1) = P("b", v);
    m(1, 0) = P("c", v);
    m(1, 1) = P("d", v);
    EXPECT_EQ(determinant(m), P("a*d-b*c", v));
    PolyMatrix z(3, 3, MPoly(v));
    z(0, 1) = P("a", v);
    z(1, 0) = P("b", v);
    z(2, 2) = P("c", v);
    EXPECT_EQ(determinant(z), P("-a*b*c", v));
}

}  // namespace
}  // namespace absconic
