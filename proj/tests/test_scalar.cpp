#include "absconic/error.hpp"
#include "absconic/scalar.hpp"

#include <gtest/gtest.h>

#include <random>

namespace absconic {
namespace {

Rat random_rat(std::mt19937& rng)
{
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 30);
    Rat r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

GaussRat random_gauss(std::mt19937& rng) { return {random_rat(rng), random_rat(rng)}; }

TEST(Rat, ParsesExactFractions)
{
    EXPECT_EQ(parse_rat("3/4"), Rat(3, 4));
    EXPECT_EQ(parse_rat("-6/8"), Rat(-3, 4));
    EXPECT_EQ(parse_rat("17"), Rat(17));
    EXPECT_EQ(parse_rat(" +5/10 "), Rat(1, 2));
    EXPECT_EQ(to_string(parse_rat("3008303104/905057309025")), "3008303104/905057309025");
}

TEST(Rat, RejectsDecimalsAndGarbage)
{
    EXPECT_THROW(parse_rat("0.5"), ParseError);
    EXPECT_THROW(parse_rat("1e3"), ParseError);
    EXPECT_THROW(parse_rat("1/0"), ParseError);
    EXPECT_THROW(parse_rat("1/-2"), ParseError);
    EXPECT_THROW(parse_rat("abc"), ParseError);
}

TEST(GaussRat, ParsesAndPrints)
{
    EXPECT_EQ(parse_gauss("i"), GaussRat::i());
    EXPECT_EQ(parse_gauss("-i"), -GaussRat::i());
    EXPECT_EQ(parse_gauss("1/2-3/4*i"), GaussRat(Rat(1, 2), Rat(-3, 4)));
    EXPECT_EQ(parse_gauss("-2+i"), GaussRat(Rat(-2), Rat(1)));
    EXPECT_EQ(parse_gauss("5*i"), GaussRat(Rat(0), Rat(5)));
    for (const char* s : {"1/2-3/4*i", "7", "-2*i", "-1/3+1*i"}) {
        EXPECT_EQ(parse_gauss(to_string(parse_gauss(s))), parse_gauss(s)) << s;
    }
}

TEST(GaussRat, FieldAxiomsOnRandomInputs)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        GaussRat a = random_gauss(rng);
        GaussRat b = random_gauss(rng);
        GaussRat c = random_gauss(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, GaussRat(0));
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inverse(), GaussRat(1));
            EXPECT_EQ((b / a) * a, b);
        }
        EXPECT_EQ(a.conj().conj(), a);
        EXPECT_EQ(a * a.conj(), GaussRat(a.norm()));
        EXPECT_GE(a.norm(), 0);
        EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
        EXPECT_EQ(parse_gauss(to_string(a)), a);
    }
}

TEST(GaussRat, DivisionByZeroThrows)
{
    EXPECT_THROW(GaussRat(1) / GaussRat(0), DomainError);
    EXPECT_THROW(GaussRat(0).inverse(), DomainError);
}

TEST(GaussRat, Powers)
{
    EXPECT_EQ(pow(GaussRat::i(), 2), GaussRat(-1));
    EXPECT_EQ(pow(GaussRat::i(), 4), GaussRat(1));
    EXPECT_EQ(pow(GaussRat(Rat(1), Rat(1)), 2), GaussRat(Rat(0), Rat(2)));
}

}  // namespace
}  // namespace absconic
