#include "absconic/scene.hpp"

#include "absconic/algebra.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace absconic;

namespace {

QMatrix generic_pose()
{
    return similarity_pose(cayley_rotation(Rat(1, 3), Rat(-1, 2), Rat(1, 5)),
                           {GaussRat(1), GaussRat(Rat(-1, 2)), GaussRat(7)}, Rat(3, 2));
}

CameraSpec generic_camera()
{
    QMatrix k{{GaussRat(2), GaussRat(Rat(1, 10)), GaussRat(1)},
              {GaussRat(0), GaussRat(3), GaussRat(-1)},
              {GaussRat(0), GaussRat(0), GaussRat(1)}};
    return calibrated_camera(k, cayley_rotation(Rat(1, 7), Rat(0), Rat(-1, 4)), {GaussRat(0), GaussRat(1), GaussRat(20)});
}

// Rational point of the radii-(R, r) torus from two rational angle parameters.
QVector torus_point(const Rat& big, const Rat& small, const Rat& s, const Rat& t)
{
    auto cos_sin = [](const Rat& u) {
        Rat d = 1 + u * u;
        return std::pair<Rat, Rat>{(1 - u * u) / d, 2 * u / d};
    };
    auto [ct, st] = cos_sin(t);
    auto [cs, ss] = cos_sin(s);
    Rat rho = big + small * ct;
    return {GaussRat(Rat(rho * cs)), GaussRat(Rat(rho * ss)), GaussRat(Rat(small * st)), GaussRat(1)};
}

QVector gradient(const MPoly& f, const QVector& x)
{
    QVector g;
    for (std::size_t k = 0; k < f.nvars(); ++k) g.push_back(f.derivative(k).evaluate(x));
    return g;
}

}  // namespace

TEST(Scene, TorusFormula)
{
    const TorusSpec spec{Rat(3), Rat(16)};
    const MPoly f = torus_implicit(spec);
    const MPoly expected = parse_poly("(x^2+y^2+z^2+3*w^2)^2 - 16*(x^2+y^2)*w^2", world_vars());
    EXPECT_TRUE(proportional(f, expected));
    EXPECT_TRUE(proportional(f.substitute(3, MPoly(world_vars())), parse_poly("(x^2+y^2+z^2)^2", world_vars())));
}

TEST(Scene, TorusFromRadii)
{
    const TorusSpec spec = torus_from_radii(Rat(5), Rat(2));
    EXPECT_EQ(spec.a, Rat(21));
    EXPECT_EQ(spec.b, Rat(100));
    const MPoly f = torus_implicit(spec);
    for (int k = -3; k <= 3; ++k) {
        EXPECT_TRUE(f.evaluate(torus_point(Rat(5), Rat(2), Rat(k, 2), Rat(1, 3 + k * k))).is_zero());
    }
    EXPECT_THROW(torus_from_radii(Rat(2), Rat(5)), DomainError);
}

TEST(Scene, DualContainsTangentPlanes)
{
    const Rat big(5), small(2);
    for (const QMatrix& pose : {QMatrix::identity(4), generic_pose()}) {
        const TorusSpec spec = torus_from_radii(big, small, pose);
        const MPoly f = torus_implicit(spec);
        const MPoly fd = torus_dual_implicit(spec);
        std::mt19937 rng(11);
        for (int k = 0; k < 20; ++k) {
            const QVector x = pose * torus_point(big, small, absconic::testing::small_rat(rng).re(), absconic::testing::small_rat(rng).re());
            ASSERT_TRUE(f.evaluate(x).is_zero());
            const QVector u = gradient(f, x);
            EXPECT_TRUE(dot(u, x).is_zero());
            EXPECT_TRUE(fd.evaluate(u).is_zero());
        }
    }
}

TEST(Scene, DualSymmetry)
{
    const MPoly fd = torus_dual_implicit({Rat(3), Rat(16)});
    const Vars v = world_vars();
    std::vector<MPoly> swap{MPoly::variable(v, 1), MPoly::variable(v, 0), MPoly::variable(v, 2), MPoly::variable(v, 3)};
    EXPECT_EQ(fd.substitute_all(swap), fd);
    EXPECT_EQ(fd.total_degree(), 4);
}

TEST(Scene, SimilarityPoses)
{
    const QMatrix r = cayley_rotation(Rat(1, 3), Rat(2), Rat(-1, 5));
    EXPECT_EQ(r.transpose() * r, QMatrix::identity(3));
    EXPECT_EQ(determinant(r), GaussRat(1));
    EXPECT_TRUE(is_similarity(generic_pose()));
    QMatrix sheared = generic_pose();
    sheared(0, 1) += GaussRat(1);
    EXPECT_FALSE(is_similarity(sheared));
    QMatrix projective = QMatrix::identity(4);
    projective(3, 0) = GaussRat(1);
    EXPECT_FALSE(is_similarity(projective));
}

TEST(Scene, CameraNormalization)
{
    const CameraSpec cam = generic_camera();
    const QMatrix h = camera_normalization(cam);
    QMatrix expected(3, 4, GaussRat(0));
    for (std::size_t k = 0; k < 3; ++k) expected(k, k) = GaussRat(1);
    EXPECT_EQ(cam.projection * h, expected);
    EXPECT_FALSE(determinant(h).is_zero());
    QMatrix bad(3, 4, GaussRat(0));
    bad(0, 0) = bad(1, 1) = GaussRat(1);
    EXPECT_THROW(CameraSpec{bad}.validate(), DegenerateError);
}

TEST(Scene, SpherePictureIsConic)
{
    const MPoly sphere = parse_poly("x^2 + y^2 + z^2 - w^2", world_vars());
    const CameraSpec cam = calibrated_camera(QMatrix::identity(3), QMatrix::identity(3), {GaussRat(0), GaussRat(0), GaussRat(5)});
    const MPoly pic = picture(sphere, cam);
    EXPECT_EQ(pic.total_degree(), 2);
    EXPECT_TRUE(proportional(pic, parse_poly("24*x^2 + 24*y^2 - z^2", image_vars())));
    const CameraSpec inside = calibrated_camera(QMatrix::identity(3), QMatrix::identity(3), {GaussRat(0), GaussRat(0), GaussRat(1)});
    EXPECT_THROW(picture(sphere, inside), DomainError);
}

TEST(Scene, TorusPictureDegreeAndNodes)
{
    const TorusSpec spec{Rat(3), Rat(16), generic_pose()};
    const CameraSpec cam = generic_camera();
    const SceneBundle scene = make_torus_scene(spec, cam);
    EXPECT_EQ(scene.picture.total_degree(), 8);
    EXPECT_TRUE(scene.picture.is_real());
    const auto [p, q] = scene.nodes;
    EXPECT_EQ(q, p.conj());
    for (const ProjPoint& n : {p, q}) {
        EXPECT_TRUE(scene.absolute.contains(n));
        EXPECT_TRUE(scene.picture.evaluate(n.coords()).is_zero());
        for (const GaussRat& g : gradient(scene.picture, n.coords())) EXPECT_TRUE(g.is_zero());
    }
}

TEST(Scene, CanonicalAbsolute)
{
    const AbsolutePair abs = ground_truth_absolute(canonical_camera());
    EXPECT_TRUE(proportional(abs.absolute.matrix(), QMatrix::identity(3)));
    EXPECT_TRUE(proportional(abs.dual_absolute.matrix(), QMatrix::identity(3)));
    EXPECT_EQ(abs.dual_absolute.plane(), Plane::Dual);

    const CameraSpec cam = generic_camera();
    CameraSpec scaled = cam;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 4; ++c) scaled.projection(r, c) *= GaussRat(-7);
    }
    const AbsolutePair a = ground_truth_absolute(cam);
    const AbsolutePair b = ground_truth_absolute(scaled);
    EXPECT_TRUE(proportional(a.absolute.matrix(), b.absolute.matrix()));
    EXPECT_TRUE(a.absolute.has_no_real_points());
    EXPECT_TRUE(a.dual_absolute.has_no_real_points());

    QMatrix at_infinity(3, 4, GaussRat(0));
    at_infinity(0, 0) = at_infinity(1, 1) = at_infinity(2, 3) = GaussRat(1);
    EXPECT_THROW(ground_truth_absolute(CameraSpec{at_infinity}), DegenerateError);
}

TEST(Scene, DualPictureMeetsDualAbsoluteDoubly)
{
    const TorusSpec spec{Rat(3), Rat(16), generic_pose()};
    const CameraSpec cam = generic_camera();
    const MPoly dp = dual_picture(torus_dual_implicit(spec), cam);
    EXPECT_EQ(dp.total_degree(), 4);
    const MPoly cstar = ground_truth_absolute(cam).dual_absolute.form(image_vars());
    const MPoly r = resultant(dp, cstar, "z");
    EXPECT_FALSE(r.is_zero());
    EXPECT_TRUE(perfect_square_root(r).has_value());
}

TEST(Scene, DualPictureOfCanonicalScene)
{
    // The planes through the origin tangent to the standard torus.
    const MPoly dp = dual_picture(torus_dual_implicit({Rat(3), Rat(16)}), canonical_camera());
    const MPoly expected = parse_poly("16*(3*x^2+3*y^2+3*z^2)^2 - 128*(x^2+y^2)*3*z^2 + (256-384)*z^4", image_vars());
    EXPECT_TRUE(proportional(dp, expected));
}

TEST(Scene, SquareScene)
{
    const auto pts = square_scene(QMatrix::identity(4), Rat(1), canonical_camera());
    EXPECT_EQ(pts[0], ProjPoint(GaussRat(0), GaussRat(0), GaussRat(1)));
    EXPECT_EQ(pts[1], ProjPoint(GaussRat(1), GaussRat(0), GaussRat(1)));
    EXPECT_EQ(pts[2], ProjPoint(GaussRat(1), GaussRat(1), GaussRat(1)));
    EXPECT_EQ(pts[3], ProjPoint(GaussRat(0), GaussRat(1), GaussRat(1)));

    QMatrix through_centre = QMatrix::identity(4);
    through_centre(2, 3) = GaussRat(-1);
    EXPECT_THROW(square_scene(through_centre, Rat(1), canonical_camera()), DegenerateError);
    EXPECT_THROW(square_scene(QMatrix::identity(4), Rat(0), canonical_camera()), DomainError);
}

TEST(Scene, Validation)
{
    EXPECT_THROW(TorusSpec({Rat(-1), Rat(16)}).validate(), DomainError);
    EXPECT_THROW(TorusSpec({Rat(3), Rat(0)}).validate(), DomainError);
    QMatrix shear = QMatrix::identity(4);
    shear(0, 1) = GaussRat(1);
    EXPECT_THROW(make_torus_scene({Rat(3), Rat(16), shear}, canonical_camera()), DomainError);
    QMatrix complex_cam = canonical_camera().projection;
    complex_cam(0, 1) = GaussRat::i();
    EXPECT_THROW(CameraSpec{complex_cam}.validate(), DomainError);
}
