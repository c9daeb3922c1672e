#include "absconic/error.hpp"
#include "absconic/projective.hpp"
#include "test_support.hpp"

#include <boost/math/constants/constants.hpp>
#include <gtest/gtest.h>

#include <random>

namespace absconic {
namespace {

using testing::random_invertible;
using testing::random_real_vector;
using testing::small_rat;

const Vars kXYZ = make_vars({"x", "y", "z"});

GaussRat Q(long n, long d = 1) { return GaussRat(Rat(n, d)); }

ProjPoint pt(long x, long y, long z) { return ProjPoint(Q(x), Q(y), Q(z)); }

QMatrix diag(long a, long b, long c)
{
    QMatrix m(3, 3, GaussRat(0));
    m(0, 0) = Q(a);
    m(1, 1) = Q(b);
    m(2, 2) = Q(c);
    return m;
}

double as_double(const Real& r) { return static_cast<double>(r); }

TEST(ProjPoint, NormalizationMakesEqualityProjective)
{
    EXPECT_EQ(pt(2, 4, 6), pt(-1, -2, -3));
    EXPECT_EQ(ProjPoint(Q(1, 2), Q(1, 3), Q(0)), pt(3, 2, 0));
    EXPECT_THROW(pt(0, 0, 0), DomainError);
    ProjPoint c(GaussRat(Rat(1)), GaussRat(Rat(0), Rat(1)), Q(0));
    EXPECT_FALSE(c.is_real());
    EXPECT_EQ(c.conj(), ProjPoint(Q(1), -GaussRat::i(), Q(0)));
}

TEST(ProjLine, JoinMeetIncidence)
{
    ProjLine l = join(pt(1, 0, 1), pt(0, 1, 1));
    EXPECT_TRUE(l.contains(pt(1, 0, 1)));
    EXPECT_TRUE(l.contains(pt(1, -1, 0)));
    EXPECT_EQ(meet(l, ProjLine(Q(0), Q(0), Q(1))), pt(1, -1, 0));
    EXPECT_THROW(join(pt(1, 2, 3), pt(2, 4, 6)), DegenerateError);
    EXPECT_TRUE(collinear(pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0)));
}

ProjPoint on_line(const GaussRat& u) { return ProjPoint(u, Q(1), Q(0)); }

TEST(CrossRatio, ConventionOnAffineParameters)
{
    const ProjPoint infinity = pt(1, 0, 0);
    for (long n : {-3L, 2L, 5L}) {
        GaussRat lambda = Q(n, 7);
        // (p, q; a, b) = ((a - p)(b - q)) / ((a - q)(b - p)) on affine parameters.
        EXPECT_EQ(cross_ratio(on_line(Q(0)), infinity, on_line(lambda), on_line(Q(1))), lambda);
        EXPECT_EQ(cross_ratio(on_line(Q(0)), on_line(Q(1)), on_line(lambda), infinity), lambda / (lambda - Q(1)));
    }
    EXPECT_EQ(cross_ratio(on_line(Q(2)), on_line(Q(3)), on_line(Q(5)), on_line(Q(7))),
              (Q(5 - 2) * Q(7 - 3)) / (Q(5 - 3) * Q(7 - 2)));
}

TEST(CrossRatio, ConjugatePairHasModulusOne)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        QVector p = random_real_vector(rng);
        QVector q = random_real_vector(rng);
        if (proportional(p, q)) continue;
        GaussRat t(small_rat(rng).re(), Rat(1 + trial % 4, 3));
        QVector a(3);
        for (std::size_t k = 0; k < 3; ++k) a[k] = p[k] + t * q[k];
        ProjPoint pa(a);
        GaussRat cr = cross_ratio(ProjPoint(p), ProjPoint(q), pa, pa.conj());
        EXPECT_EQ(cr.norm(), Rat(1));
    }
}

TEST(CrossRatio, InvariantUnderCollineations)
{
    std::mt19937 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        QVector p = random_real_vector(rng);
        QVector q = random_real_vector(rng);
        if (proportional(p, q)) continue;
        auto along = [&](const GaussRat& s) {
            QVector v(3);
            for (std::size_t k = 0; k < 3; ++k) v[k] = p[k] + s * q[k];
            return ProjPoint(v);
        };
        GaussRat s = small_rat(rng);
        GaussRat t = small_rat(rng) + GaussRat::i();
        if (s.is_zero()) continue;
        ProjPoint a = along(s);
        ProjPoint b = along(t);
        ProjMap m(random_invertible(rng));
        EXPECT_EQ(cross_ratio(m.apply(ProjPoint(p)), m.apply(ProjPoint(q)), m.apply(a), m.apply(b)),
                  cross_ratio(ProjPoint(p), ProjPoint(q), a, b));
    }
}

TEST(CrossRatio, RejectsBadConfigurations)
{
    EXPECT_THROW(cross_ratio(pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 0)), DegenerateError);
    EXPECT_THROW(cross_ratio(pt(1, 0, 0), pt(0, 1, 0), pt(1, 0, 0), pt(1, 1, 0)), DegenerateError);
}

const Conic kUnit(QMatrix::identity(3));

TEST(EllipticDistance, SameAndKnownPoints)
{
    PrecisionScope scope(128);
    EXPECT_EQ(elliptic_distance(pt(1, 2, 3), pt(1, 2, 3), kUnit), 0);
    Real d = elliptic_distance(pt(1, 0, 1), pt(0, 1, 1), kUnit);
    EXPECT_LT(as_double(abs(d - boost::math::constants::pi<Real>() / 3)), 1e-30);
    Real right = elliptic_distance(pt(1, 0, 0), pt(0, 1, 0), kUnit);
    EXPECT_LT(as_double(abs(right - boost::math::constants::pi<Real>() / 2)), 1e-30);
}

TEST(EllipticDistance, EqualsAngleBetweenLinesThroughOrigin)
{
    PrecisionScope scope(128);
    std::mt19937 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        QVector p = random_real_vector(rng);
        QVector q = random_real_vector(rng);
        if (proportional(p, q)) continue;
        Real dot_pq = abs(to_real(dot(p, q).re()));
        Real np = sqrt(to_real(dot(p, p).re()));
        Real nq = sqrt(to_real(dot(q, q).re()));
        Real angle = acos(dot_pq / (np * nq));
        Real d = elliptic_distance(ProjPoint(p), ProjPoint(q), kUnit);
        EXPECT_LT(as_double(abs(d - angle)), 1e-9);
    }
}

TEST(EllipticDistance, SymmetricAndTriangleInequality)
{
    PrecisionScope scope(128);
    std::mt19937 rng(14);
    Conic c(QMatrix{{Q(3), Q(1), Q(0)}, {Q(1), Q(2), Q(-1)}, {Q(0), Q(-1), Q(4)}});
    ASSERT_TRUE(c.has_no_real_points());
    for (int trial = 0; trial < 40; ++trial) {
        ProjPoint p(random_real_vector(rng));
        ProjPoint q(random_real_vector(rng));
        ProjPoint r(random_real_vector(rng));
        Real pq = elliptic_distance(p, q, c);
        EXPECT_EQ(pq, elliptic_distance(q, p, c));
        EXPECT_LE(as_double(elliptic_distance(p, r, c)), as_double(pq + elliptic_distance(q, r, c)) + 1e-9);
        EXPECT_GE(as_double(pq), 0.0);
        EXPECT_LE(as_double(pq), as_double(boost::math::constants::pi<Real>() / 2) + 1e-30);
    }
}

TEST(EllipticDistance, RequiresConicWithoutRealPoints)
{
    EXPECT_THROW(elliptic_distance(pt(1, 0, 1), pt(0, 1, 1), Conic(diag(1, 1, -1))), DomainError);
    EXPECT_THROW(elliptic_distance(ProjPoint(Q(1), GaussRat::i(), Q(0)), pt(0, 1, 1), kUnit), DomainError);
}

TEST(Conic, FormRoundTripAndDefiniteness)
{
    MPoly f = parse_poly("x^2 + 3*x*y - y^2 + 2*z^2", kXYZ);
    Conic c = Conic::from_form(f);
    EXPECT_TRUE(proportional(c.form(kXYZ), f));
    EXPECT_TRUE(kUnit.has_no_real_points());
    EXPECT_TRUE(Conic(diag(-1, -2, -3)).has_no_real_points());
    EXPECT_FALSE(Conic(diag(1, 1, -1)).has_no_real_points());
    EXPECT_FALSE(Conic(diag(1, 1, 0)).has_no_real_points());
    EXPECT_TRUE(Conic(diag(1, 1, 0)).is_degenerate());
    EXPECT_THROW(Conic::from_form(parse_poly("x^3", kXYZ)), DomainError);
}

TEST(ConicDual, AdjugateAndInvolution)
{
    EXPECT_EQ(conic_dual(kUnit).matrix(), QMatrix::identity(3));
    EXPECT_EQ(conic_dual(kUnit).plane(), Plane::Dual);
    EXPECT_EQ(conic_dual(Conic(diag(1, 2, 3))).matrix(), diag(6, 3, 2));
    EXPECT_THROW(conic_dual(Conic(diag(1, 0, 3))), DegenerateError);
    std::mt19937 rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        QMatrix m = random_invertible(rng);
        QMatrix s = m.transpose() * m;
        Conic c(s);
        EXPECT_EQ(conic_dual(conic_dual(c)), c);
    }
}

TEST(ConicDual, WorkedTorusExample)
{
    // Dual absolute found for the worked torus example, a1 = 1.
    Conic star = Conic::from_form(parse_poly("x^2 + 62687/35978*y^2 + 157184/2428515*y*z + 40239104/28522908675*z^2", kXYZ), Plane::Dual);
    Conic primal = conic_dual(star);
    EXPECT_EQ(primal, Conic::from_form(parse_poly(testing::kExampleAbsolute, kXYZ)));
    EXPECT_TRUE(primal.has_no_real_points());
}

TEST(ProjMap, ActionsAreConsistent)
{
    std::mt19937 rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        ProjMap m(random_invertible(rng));
        ProjPoint p(random_real_vector(rng));
        ProjPoint q(random_real_vector(rng));
        if (p == q) continue;
        ProjLine l = join(p, q);
        EXPECT_EQ(m.apply(l), join(m.apply(p), m.apply(q)));
        Conic c(QMatrix{{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(-1)}});
        ProjPoint on(Q(3), Q(4), Q(5));
        EXPECT_TRUE(m.apply(c).contains(m.apply(on)));
        EXPECT_EQ((m * m.inverse()), ProjMap::identity());
    }
    EXPECT_THROW(ProjMap(diag(1, 1, 0)), DegenerateError);
}

TEST(Tangency, SymbolicConicAgainstIsotropicLines)
{
    Vars ring = make_vars({"x", "y", "z", "a1", "a2", "a3", "a4"});
    MPoly q = parse_poly("a1*x^2 + a2*y^2 + a3*y*z + a4*z^2", ring);
    std::vector<std::size_t> fv{0, 1, 2};
    MPoly expect = parse_poly("4*a1*a4 - 4*a2*a4 + a3^2", ring);
    ProjLine plus(Q(1), GaussRat::i(), Q(0));
    EXPECT_EQ(line_tangent_to_conic_condition(plus, q, fv), expect);
    EXPECT_EQ(line_tangent_to_conic_condition(plus.conj(), q, fv), expect);
}

TEST(Tangency, ConcreteConics)
{
    std::vector<std::size_t> fv{0, 1, 2};
    MPoly circle = parse_poly("x^2 + y^2 - z^2", kXYZ);
    EXPECT_TRUE(line_tangent_to_conic_condition(ProjLine(Q(-1), Q(0), Q(1)), circle, fv).is_zero());
    MPoly missing = line_tangent_to_conic_condition(ProjLine(Q(0), Q(0), Q(1)), circle, fv);
    EXPECT_TRUE(missing.is_constant());
    EXPECT_FALSE(missing.is_zero());
    EXPECT_FALSE(line_tangent_to_conic_condition(ProjLine(Q(1), Q(2), Q(0)), circle, fv).is_zero());
}

TEST(MapFromPointPairs, FrameAndRandomMaps)
{
    std::vector<std::pair<ProjPoint, ProjPoint>> frame{
        {pt(1, 0, 0), pt(1, 0, 0)}, {pt(0, 1, 0), pt(0, 1, 0)}, {pt(0, 0, 1), pt(0, 0, 1)}, {pt(1, 1, 1), pt(1, 1, 1)}};
    EXPECT_EQ(map_from_point_pairs(frame), ProjMap::identity());
    std::mt19937 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        ProjMap m(random_invertible(rng));
        std::vector<std::pair<ProjPoint, ProjPoint>> pairs;
        for (const auto& [x, y] : frame) pairs.emplace_back(x, m.apply(x));
        EXPECT_EQ(map_from_point_pairs(pairs), m);
    }
    frame[3] = {pt(1, 1, 0), pt(1, 1, 1)};
    EXPECT_THROW(map_from_point_pairs(frame), DegenerateError);
}

TEST(Reflection, FixedElements)
{
    ReflectionFixed canon = reflection_fixed_elements(ProjMap(diag(-1, -1, 1)));
    EXPECT_EQ(canon.line, ProjLine(Q(0), Q(0), Q(1)));
    EXPECT_EQ(canon.point, pt(0, 0, 1));
    ReflectionFixed mirror = reflection_fixed_elements(ProjMap(diag(-1, 1, 1)));
    EXPECT_EQ(mirror.line, ProjLine(Q(1), Q(0), Q(0)));
    EXPECT_EQ(mirror.point, pt(1, 0, 0));
    std::mt19937 rng(18);
    for (int trial = 0; trial < 10; ++trial) {
        ProjMap m(random_invertible(rng));
        ProjMap s = m * ProjMap(diag(-1, -1, 1)) * m.inverse();
        ReflectionFixed f = reflection_fixed_elements(s);
        EXPECT_EQ(f.line, m.apply(canon.line));
        EXPECT_EQ(f.point, m.apply(canon.point));
    }
    EXPECT_THROW(reflection_fixed_elements(ProjMap(diag(1, 2, 3))), DomainError);
    EXPECT_THROW(reflection_fixed_elements(ProjMap::identity()), DomainError);
}

TEST(Reflection, NormalForm)
{
    QMatrix a = reflection_normal_form(diag(-3, 3, 3));
    EXPECT_EQ(a, diag(1, -1, -1));
    EXPECT_EQ(a * a, QMatrix::identity(3));
    EXPECT_EQ(determinant(a), Q(1));
    EXPECT_TRUE(ProjMap(diag(-1, 1, 1)).is_involution());
    EXPECT_FALSE(ProjMap(diag(1, 2, 1)).is_involution());
}

}  // namespace
}  // namespace absconic
