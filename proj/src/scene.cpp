#include "absconic/scene.hpp"

#include "absconic/algebra.hpp"
#include "absconic/error.hpp"

namespace absconic {

namespace {

bool is_real_matrix(const QMatrix& m)
{
    for (const auto& x : m.data()) {
        if (!x.is_real()) return false;
    }
    return true;
}

MPoly var(const Vars& v, const char* name) { return MPoly::variable(v, name); }

}  // namespace

Vars world_vars()
{
    static const Vars v = make_vars({"x", "y", "z", "w"});
    return v;
}

Vars image_vars()
{
    static const Vars v = make_vars({"x", "y", "z"});
    return v;
}

void TorusSpec::validate() const
{
    if (sgn(a) <= 0) throw DomainError("torus parameter a must be positive");
    if (sgn(b) <= 0) throw DomainError("torus parameter b must be positive");
    if (pose.rows() != 4 || pose.cols() != 4) throw DomainError("pose must be a 4x4 matrix");
    if (!is_real_matrix(pose)) throw DomainError("pose must be real");
    if (determinant(pose).is_zero()) throw DomainError("pose must be invertible");
}

TorusSpec torus_from_radii(const Rat& big, const Rat& small, QMatrix pose)
{
    if (sgn(small) <= 0 || big <= small) throw DomainError("torus radii must satisfy 0 < r < R");
    TorusSpec spec{big * big - small * small, 4 * big * big, std::move(pose)};
    spec.validate();
    return spec;
}

void CameraSpec::validate() const
{
    if (projection.rows() != 3 || projection.cols() != 4) throw DomainError("camera must be a 3x4 matrix");
    if (!is_real_matrix(projection)) throw DomainError("camera must be real");
    if (rank(projection) != 3) throw DegenerateError("camera matrix must have rank 3");
}

QVector CameraSpec::center() const
{
    validate();
    return normalize_vector(nullspace(projection).front());
}

CameraSpec canonical_camera()
{
    QMatrix p(3, 4, GaussRat(0));
    for (std::size_t k = 0; k < 3; ++k) p(k, k) = GaussRat(1);
    return {p};
}

CameraSpec calibrated_camera(const QMatrix& k, const QMatrix& r, const QVector& t)
{
    if (k.rows() != 3 || k.cols() != 3 || r.rows() != 3 || r.cols() != 3 || t.size() != 3) {
        throw DomainError("calibrated camera: expected 3x3 K, 3x3 R and a 3-vector t");
    }
    QMatrix rt(3, 4);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) rt(i, j) = r(i, j);
        rt(i, 3) = t[i];
    }
    CameraSpec cam{k * rt};
    cam.validate();
    return cam;
}

QMatrix cayley_rotation(const Rat& p, const Rat& q, const Rat& r)
{
    const GaussRat gp(p), gq(q), gr(r), zero(0);
    QMatrix s{{zero, -gr, gq}, {gr, zero, -gp}, {-gq, gp, zero}};
    const QMatrix id = QMatrix::identity(3);
    return inverse(id - s) * (id + s);
}

QMatrix similarity_pose(const QMatrix& rotation, const QVector& translation, const Rat& scale)
{
    if (rotation.rows() != 3 || rotation.cols() != 3 || translation.size() != 3) {
        throw DomainError("similarity pose: expected a 3x3 rotation and a 3-vector");
    }
    QMatrix pose = QMatrix::identity(4);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) pose(i, j) = rotation(i, j) * GaussRat(scale);
        pose(i, 3) = translation[i];
    }
    return pose;
}

bool is_similarity(const QMatrix& pose)
{
    if (pose.rows() != 4 || pose.cols() != 4 || !is_real_matrix(pose)) return false;
    for (std::size_t j = 0; j < 3; ++j) {
        if (!pose(3, j).is_zero()) return false;
    }
    if (pose(3, 3).is_zero()) return false;
    QMatrix r(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = pose(i, j);
    }
    QMatrix g = r.transpose() * r;
    return !g(0, 0).is_zero() && g == QMatrix::identity(3, g(0, 0), GaussRat(0));
}

QMatrix camera_normalization(const CameraSpec& cam)
{
    cam.validate();
    QMatrix h(4, 4);
    for (std::size_t k = 0; k < 3; ++k) {
        QVector e(3);
        e[k] = GaussRat(1);
        auto col = solve_linear(cam.projection, e);
        if (!col) throw DegenerateError("camera matrix must have rank 3");
        for (std::size_t r = 0; r < 4; ++r) h(r, k) = (*col)[r];
    }
    const QVector o = cam.center();
    for (std::size_t r = 0; r < 4; ++r) h(r, 3) = o[r];
    return h;
}

MPoly torus_implicit(const TorusSpec& spec)
{
    spec.validate();
    const Vars v = world_vars();
    const MPoly x = var(v, "x"), y = var(v, "y"), z = var(v, "z"), w = var(v, "w");
    const MPoly rho = x * x + y * y;
    const MPoly s = rho + z * z + w * w * GaussRat(spec.a);
    const MPoly f = s * s - rho * w * w * GaussRat(spec.b);
    return compose_linear(f, inverse(spec.pose)).normalized();
}

MPoly torus_dual_implicit(const TorusSpec& spec)
{
    spec.validate();
    const Vars v = world_vars();
    const MPoly x = var(v, "x"), y = var(v, "y"), z = var(v, "z"), w = var(v, "w");
    const GaussRat a(spec.a), b(spec.b);
    const MPoly rho = x * x + y * y;
    const MPoly s = (rho + z * z) * a + w * w;
    const MPoly f = s * s * GaussRat(16) - rho * (z * z * a + w * w * GaussRat(2)) * (GaussRat(8) * b)
                    + z.pow(4) * (b * b - GaussRat(8) * a * b) - z * z * w * w * (GaussRat(8) * b);
    return compose_linear(f, spec.pose.transpose()).normalized();
}

MPoly picture(const MPoly& f, const CameraSpec& cam)
{
    if (f.is_zero() || !f.is_homogeneous()) throw DomainError("picture: surface must be a nonzero form");
    const MPoly fw = f.in_ring(world_vars());
    const QMatrix h = camera_normalization(cam);
    const MPoly g = compose_linear(fw, h);
    const std::size_t w = g.index_of("w");
    if (g.degree(w) < f.total_degree()) throw DomainError("picture: camera centre lies on the surface");
    MPoly d = discriminant(g, w);
    // Image of the section by the plane at infinity, which is h's last row.
    MPoly at_infinity(world_vars());
    for (std::size_t c = 0; c < 4; ++c) {
        if (!h(3, c).is_zero()) at_infinity += MPoly::variable(world_vars(), c) * h(3, c);
    }
    if (at_infinity.degree(w) == 1) {
        const MPoly r = resultant(g, at_infinity, w);
        if (!r.is_constant()) {
            const MPoly s = squarefree_part(r);
            const unsigned m = multiplicity(d, s);
            if (m >= 2 && m % 2 == 0) d = divide_exact(d, s.pow(m));
        }
    }
    if (d.is_zero()) throw DegenerateError("picture: vanishing discriminant");
    return squarefree_part(d).in_ring(image_vars()).normalized();
}

MPoly dual_picture(const MPoly& fdual, const CameraSpec& cam)
{
    cam.validate();
    if (fdual.is_zero() || !fdual.is_homogeneous()) throw DomainError("dual picture: surface must be a nonzero form");
    QMatrix m(4, 4, GaussRat(0));
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 3; ++c) m(r, c) = cam.projection(c, r);
    }
    const MPoly g = compose_linear(fdual.in_ring(world_vars()), m);
    if (g.is_zero()) throw DegenerateError("dual picture: surface dual contains every plane through the centre");
    return g.in_ring(image_vars()).normalized();
}

AbsolutePair ground_truth_absolute(const CameraSpec& cam)
{
    cam.validate();
    QMatrix block(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) block(i, j) = cam.projection(i, j);
    }
    if (determinant(block).is_zero()) throw DegenerateError("camera centre lies on the plane at infinity");
    Conic dual(block * block.transpose(), Plane::Dual);
    return {conic_dual(dual), dual};
}

std::pair<ProjPoint, ProjPoint> ground_truth_nodes(const TorusSpec& spec, const CameraSpec& cam)
{
    spec.validate();
    cam.validate();
    auto image = [&](const GaussRat& im) {
        QVector x{GaussRat(1), im, GaussRat(0), GaussRat(0)};
        QVector p = cam.projection * (spec.pose * x);
        if (is_zero_vector(p)) throw DegenerateError("circular point maps to the camera centre");
        return ProjPoint(p);
    };
    ProjPoint plus = image(GaussRat::i());
    ProjPoint minus = image(-GaussRat::i());
    if (plus == minus || plus.is_real()) throw DegenerateError("node images are real or coincide");
    return {plus, minus};
}

std::array<ProjPoint, 4> square_scene(const QMatrix& pose, const Rat& side, const CameraSpec& cam)
{
    cam.validate();
    if (pose.rows() != 4 || pose.cols() != 4 || determinant(pose).is_zero()) throw DomainError("square pose must be an invertible 4x4 matrix");
    if (sgn(side) == 0) throw DomainError("square side must be nonzero");
    const QVector plane = adjugate(pose).transpose() * QVector{GaussRat(0), GaussRat(0), GaussRat(1), GaussRat(-1)};
    if (dot(plane, cam.center()).is_zero()) throw DegenerateError("square plane passes through the camera centre");
    const GaussRat s(side), zero(0), one(1);
    const std::array<std::pair<GaussRat, GaussRat>, 4> corners{{{zero, zero}, {s, zero}, {s, s}, {zero, s}}};
    std::array<ProjPoint, 4> out;
    for (std::size_t k = 0; k < 4; ++k) {
        QVector x{corners[k].first, corners[k].second, one, one};
        out[k] = ProjPoint(cam.projection * (pose * x));
    }
    return out;
}

SceneBundle make_torus_scene(const TorusSpec& spec, const CameraSpec& cam)
{
    spec.validate();
    cam.validate();
    if (!is_similarity(spec.pose)) throw DomainError("scene synthesis needs a similarity pose");
    SceneBundle b{spec, cam, {}, {}, {}, {}, {}};
    b.picture = picture(torus_implicit(spec), cam);
    b.dual_picture = dual_picture(torus_dual_implicit(spec), cam);
    AbsolutePair abs = ground_truth_absolute(cam);
    b.absolute = abs.absolute;
    b.dual_absolute = abs.dual_absolute;
    b.nodes = ground_truth_nodes(spec, cam);
    return b;
}

}  // namespace absconic
