#include "absconic/calibrate.hpp"

#include "absconic/algebra.hpp"
#include "absconic/scene.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace absconic {
namespace {

using testing::random_invertible;

const Vars kXYZ = make_vars({"x", "y", "z"});

GaussRat Q(long n, long d = 1) { return GaussRat(Rat(n, d)); }

QMatrix diag(long a, long b, long c)
{
    QMatrix m(3, 3, GaussRat(0));
    m(0, 0) = Q(a);
    m(1, 1) = Q(b);
    m(2, 2) = Q(c);
    return m;
}

MPoly P(const char* text) { return parse_poly(text, kXYZ); }

MPoly example_dual() { return parse_poly(testing::kExampleQuartic, image_vars()); }

CameraSpec generic_camera()
{
    QMatrix k{{Q(2), Q(1, 10), Q(1)}, {Q(0), Q(3), Q(-1)}, {Q(0), Q(0), Q(1)}};
    return calibrated_camera(k, cayley_rotation(Rat(1, 7), Rat(0), Rat(-1, 4)), {Q(0), Q(1), Q(20)});
}

QMatrix pose(long p, long q, long r, QVector t)
{
    return similarity_pose(cayley_rotation(Rat(p, 5), Rat(q, 5), Rat(r, 5)), t);
}

// Rank of the coefficient vectors of some quadratic forms.
std::size_t form_rank(const std::vector<MPoly>& forms)
{
    QMatrix m(forms.size(), 6, GaussRat(0));
    for (std::size_t r = 0; r < forms.size(); ++r) {
        const QMatrix c = Conic::from_form(forms[r]).matrix();
        std::size_t k = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i; j < 3; ++j) m(r, k++) = c(i, j);
        }
    }
    return rank(m);
}

TEST(FindSymmetry, ExampleDualPicture)
{
    const Reflection s = find_symmetry(example_dual(), Plane::Dual);
    EXPECT_EQ(s.plane, Plane::Dual);
    EXPECT_EQ(s.map, ProjMap(diag(-1, 1, 1)));
    EXPECT_EQ(reflection_normal_form(s.map.matrix()), diag(1, -1, -1));
    EXPECT_TRUE(proportional(compose_linear(example_dual(), s.map.matrix()), example_dual()));
}

TEST(FindSymmetry, ConicHasAContinuum)
{
    try {
        find_symmetry(P("x^2 + y^2 - z^2"));
        FAIL() << "expected NotUniquelySolvable";
    } catch (const NotUniquelySolvable& e) {
        EXPECT_GT(e.dimension(), 0);
    }
}

TEST(FindSymmetry, FermatQuarticHasSeveral)
{
    try {
        find_symmetry(P("x^4 + y^4 + z^4"));
        FAIL() << "expected NotUniquelySolvable";
    } catch (const NotUniquelySolvable& e) {
        EXPECT_EQ(e.dimension(), 0);
        EXPECT_GT(e.count(), 1u);
    }
}

TEST(FindSymmetry, GenericQuarticHasNone)
{
    try {
        find_symmetry(P("x^4 + 2*x^3*y - y^4 + 3*x*y^2*z + x*z^3 - 5*y*z^3 + z^4 + 7*x^2*z^2"));
        FAIL() << "expected NotUniquelySolvable";
    } catch (const NotUniquelySolvable& e) {
        EXPECT_EQ(e.count(), 0u);
    }
}

TEST(FindSymmetry, EquivariantUnderChangeOfCoordinates)
{
    std::mt19937 rng(11);
    const MPoly f = example_dual();
    const QMatrix a = diag(-1, 1, 1);
    for (int trial = 0; trial < 3; ++trial) {
        const QMatrix m = random_invertible(rng, 2);
        const MPoly g = compose_linear(f, m);
        const Reflection s = find_symmetry(g, Plane::Dual);
        EXPECT_EQ(s.map, ProjMap(inverse(m) * a * m)) << "trial " << trial;
    }
}

TEST(InvariantConicSpace, CanonicalReflection)
{
    const Reflection s{ProjMap(diag(-1, -1, 1)), Plane::Image, P("x^2 + y^2 + z^2")};
    const auto forms = invariant_conic_space(s, kXYZ);
    ASSERT_EQ(forms.size(), 4u);
    EXPECT_EQ(form_rank(forms), 4u);
    const std::vector<MPoly> expected{P("x^2"), P("x*y"), P("y^2"), P("z^2")};
    for (const auto& f : forms) {
        std::vector<MPoly> with = expected;
        with.push_back(f);
        EXPECT_EQ(form_rank(with), 4u) << f;
    }
}

TEST(InvariantConicSpace, FormsAreInvariant)
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        const QMatrix m = random_invertible(rng);
        const QMatrix a = inverse(m) * diag(-1, 1, 1) * m;
        const Reflection s{ProjMap(a), Plane::Image, MPoly(kXYZ)};
        const auto forms = invariant_conic_space(s, kXYZ);
        ASSERT_EQ(forms.size(), 4u);
        EXPECT_EQ(form_rank(forms), 4u);
        for (const auto& q : forms) EXPECT_TRUE(proportional(compose_linear(q, a), q)) << q;
    }
}

TEST(Squares, CanonicalCameraSeesCircularPoints)
{
    const auto sq = square_scene(QMatrix::identity(4), Rat(2), canonical_camera());
    const auto c = absolute_points_from_square(sq[0], sq[1], sq[2], sq[3]);
    const ProjPoint plus(Q(1), GaussRat::i(), Q(0));
    const bool either = (c.absolute_points.first == plus && c.absolute_points.second == plus.conj()) ||
                        (c.absolute_points.second == plus && c.absolute_points.first == plus.conj());
    EXPECT_TRUE(either);
}

TEST(Squares, ThreePlanesRecoverTheAbsolute)
{
    for (const CameraSpec& cam : {canonical_camera(), generic_camera()}) {
        const std::vector<std::array<ProjPoint, 4>> squares{
            square_scene(pose(1, 0, 2, {Q(0), Q(0), Q(8)}), Rat(1), cam),
            square_scene(pose(0, -2, 1, {Q(1), Q(-1), Q(9)}), Rat(2), cam),
            square_scene(pose(3, 1, 0, {Q(-1), Q(1), Q(10)}), Rat(3, 2), cam),
        };
        const AbsolutePair truth = ground_truth_absolute(cam);
        for (const auto& sq : squares) {
            const auto c = absolute_points_from_square(sq[0], sq[1], sq[2], sq[3]);
            EXPECT_TRUE(truth.absolute.contains(c.absolute_points.first));
            EXPECT_TRUE(truth.absolute.contains(c.absolute_points.second));
        }
        EXPECT_EQ(calibrate_squares(squares), truth.absolute);
    }
}

TEST(Squares, ParallelPlanesAreDegenerate)
{
    const CameraSpec cam = generic_camera();
    const std::vector<std::array<ProjPoint, 4>> squares{
        square_scene(pose(1, 0, 2, {Q(0), Q(0), Q(8)}), Rat(1), cam),
        square_scene(pose(1, 0, 2, {Q(1), Q(0), Q(11)}), Rat(2), cam),
        square_scene(pose(1, 0, 2, {Q(0), Q(2), Q(6)}), Rat(3), cam),
    };
    EXPECT_THROW(calibrate_squares(squares), DegenerateError);
}

TEST(Revolution, ConjugatedReflectionsGiveTheUnitConic)
{
    std::vector<Reflection> rs;
    for (const auto& r : {cayley_rotation(Rat(1, 2), Rat(0), Rat(0)), cayley_rotation(Rat(0), Rat(1, 3), Rat(2)),
                          cayley_rotation(Rat(1), Rat(-1), Rat(1, 4))}) {
        rs.push_back({ProjMap(r.transpose() * diag(-1, -1, 1) * r), Plane::Image, MPoly(kXYZ)});
    }
    EXPECT_EQ(calibrate_revolution(std::span<const Reflection>(rs)), Conic(QMatrix::identity(3)));
    std::vector<Reflection> same(3, rs[0]);
    EXPECT_THROW(calibrate_revolution(std::span<const Reflection>(same)), DegenerateError);
}

TEST(Revolution, ThreeTorusPictures)
{
    const CameraSpec cam = generic_camera();
    std::vector<Reflection> rs;
    for (const auto& p : {pose(1, 0, 2, {Q(0), Q(0), Q(8)}), pose(0, -2, 1, {Q(1), Q(-1), Q(9)}),
                          pose(3, 1, 0, {Q(-1), Q(1), Q(10)})}) {
        const SceneBundle b = make_torus_scene(TorusSpec{Rat(3), Rat(16), p}, cam);
        rs.push_back(find_symmetry(b.dual_picture, Plane::Dual));
    }
    EXPECT_EQ(calibrate_revolution(std::span<const Reflection>(rs)), ground_truth_absolute(cam).absolute);
}

TEST(SingularPoints, NodalCubic)
{
    const auto pts = singular_points(P("y^2*z - x^3 - x^2*z"));
    ASSERT_EQ(pts.size(), 1u);
    ASSERT_TRUE(pts[0].exact);
    EXPECT_EQ(*pts[0].exact, ProjPoint(Q(0), Q(0), Q(1)));
    EXPECT_TRUE(pts[0].real);
    EXPECT_EQ(pts[0].node, std::optional<bool>(true));
    EXPECT_THROW(singular_points(P("(x^2 + y^2 - z^2)^2")), DomainError);
}

TEST(SingularPoints, TorusPictureContainsTheCircularNodes)
{
    const SceneBundle b =
        make_torus_scene(TorusSpec{Rat(3), Rat(16), pose(1, 0, 2, {Q(0), Q(0), Q(12)})}, canonical_camera());
    const auto pts = singular_points(b.picture);
    for (const ProjPoint& n : {b.nodes.first, b.nodes.second}) {
        EXPECT_TRUE(std::any_of(pts.begin(), pts.end(), [&](const SingularPoint& p) {
            return p.exact && *p.exact == n && !p.real && p.node == std::optional<bool>(true);
        })) << "missing node";
    }
}

TEST(CalibrateTorus, ExampleHasOneCandidate)
{
    const CandidateSet out = calibrate_torus(MPoly(image_vars()), example_dual(),
                                             ProjPoint(Q(1), GaussRat::i(), Q(0)));
    ASSERT_EQ(out.candidates.size(), 1u);
    const Candidate& c = out.candidates[0];
    ASSERT_TRUE(c.exact);
    EXPECT_EQ(c.absolute, Conic::from_form(P(testing::kExampleAbsolute)));
    EXPECT_TRUE(c.real && c.definite && c.resultant_square && c.avoids_singular_points);
    EXPECT_FALSE(c.hessian.is_zero());
    for (const auto& r : out.rejected) EXPECT_FALSE(r.real && r.definite);
}

TEST(CalibrateTorus, RejectsBadNodes)
{
    EXPECT_THROW(calibrate_torus(MPoly(image_vars()), example_dual(), ProjPoint(Q(1), Q(2), Q(0))), DomainError);
    EXPECT_THROW(calibrate_torus(MPoly(image_vars()), example_dual(), std::nullopt), DomainError);
    EXPECT_THROW(calibrate_torus(MPoly(image_vars()), P("x^2 + y^2 + z^2"), ProjPoint(Q(1), GaussRat::i(), Q(0))),
                 NotUniquelySolvable);
}

}  // namespace
}  // namespace absconic
