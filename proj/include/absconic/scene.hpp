#pragma once

#include "absconic/matrix.hpp"
#include "absconic/mpoly.hpp"
#include "absconic/projective.hpp"

#include <array>
#include <utility>

namespace absconic {

/// World coordinates x, y, z, w (w = 0 is the plane at infinity); image
/// and dual image coordinates x, y, z.
Vars world_vars();
Vars image_vars();

/// Torus (x^2+y^2+z^2+a w^2)^2 - b (x^2+y^2) w^2 moved by `pose`: a world
/// point X corresponds to the torus point pose^-1 X. Poses used for
/// synthetic ground truth should be similarities (see is_similarity).
struct TorusSpec {
    Rat a;
    Rat b;
    QMatrix pose = QMatrix::identity(4);

    /// Throws DomainError unless a > 0, b > 0 and pose is a real
    /// invertible 4x4 matrix.
    void validate() const;
};

/// Torus with tube centre circle radius R and tube radius r (a = R^2 - r^2,
/// b = 4R^2); such tori have dense rational points.
TorusSpec torus_from_radii(const Rat& big, const Rat& small, QMatrix pose = QMatrix::identity(4));

/// Central projection X -> P X by a real 3x4 matrix of rank 3.
struct CameraSpec {
    QMatrix projection;

    void validate() const;
    /// Projection centre: the kernel of P, normalized.
    QVector center() const;
};

CameraSpec canonical_camera();
/// K [R | t] for an upper triangular calibration K, rotation R, translation t.
CameraSpec calibrated_camera(const QMatrix& k, const QMatrix& r, const QVector& t);

/// Rational rotation (I - S)^-1 (I + S) with S the skew matrix of (p, q, r).
QMatrix cayley_rotation(const Rat& p, const Rat& q, const Rat& r);
/// 4x4 pose X -> [s R | t; 0 1] X.
QMatrix similarity_pose(const QMatrix& rotation, const QVector& translation, const Rat& scale = Rat(1));
/// True when the pose maps the absolute conic of w = 0 to itself.
bool is_similarity(const QMatrix& pose);

/// A 4x4 change of world coordinates H with P H = [I | 0]; its last
/// column is the camera centre.
QMatrix camera_normalization(const CameraSpec& cam);

MPoly torus_implicit(const TorusSpec& spec);
/// Dual quartic in plane coordinates (u_x, u_y, u_z, u_w) named x, y, z, w;
/// the plane u contains X when u . X = 0.
MPoly torus_dual_implicit(const TorusSpec& spec);

/// Outline of the surface F = 0 seen by the camera: the squarefree part of
/// the discriminant in the projection direction after normalizing the
/// camera, with the image of F's section by the plane at infinity removed
/// when it divides the discriminant to an even power.
MPoly picture(const MPoly& f, const CameraSpec& cam);

/// Section of the dual surface by the pencil of planes through the camera
/// centre: Fdual(P^T l) for lines l of the image plane.
MPoly dual_picture(const MPoly& fdual, const CameraSpec& cam);

struct AbsolutePair {
    Conic absolute;
    Conic dual_absolute;
};

/// Image of the absolute conic: C_E* = P diag(1,1,1,0) P^T and C_E its dual.
AbsolutePair ground_truth_absolute(const CameraSpec& cam);

/// Images of the circular points (1 : +-i : 0 : 0) of the torus, which are
/// nodes of the picture on the image of the absolute conic.
std::pair<ProjPoint, ProjPoint> ground_truth_nodes(const TorusSpec& spec, const CameraSpec& cam);

/// Images of the square with vertices (0,0,1), (s,0,1), (s,s,1), (0,s,1) in
/// the plane z = 1, moved by `pose`.
std::array<ProjPoint, 4> square_scene(const QMatrix& pose, const Rat& side, const CameraSpec& cam);

struct SceneBundle {
    TorusSpec spec;
    CameraSpec camera;
    MPoly picture;
    MPoly dual_picture;
    Conic absolute;
    Conic dual_absolute;
    std::pair<ProjPoint, ProjPoint> nodes;
};

/// Full synthetic torus scene; the pose must be a similarity.
SceneBundle make_torus_scene(const TorusSpec& spec, const CameraSpec& cam);

}  // namespace absconic
