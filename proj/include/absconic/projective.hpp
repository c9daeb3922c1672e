#pragma once

#include "absconic/matrix.hpp"
#include "absconic/mpoly.hpp"
#include "absconic/numeric.hpp"

#include <array>
#include <span>
#include <utility>

namespace absconic {

/// Homogeneous triple, canonically normalized so that equal projective
/// elements compare equal.
class ProjPoint {
  public:
    ProjPoint() = default;
    explicit ProjPoint(const QVector& coords);
    ProjPoint(GaussRat x, GaussRat y, GaussRat z);

    const QVector& coords() const { return v_; }
    const GaussRat& operator[](std::size_t k) const { return v_[k]; }
    bool is_real() const;
    ProjPoint conj() const;

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

  private:
    QVector v_;
};

/// Lines are stored by their coefficient vector (a:b:c) of ax + by + cz.
class ProjLine {
  public:
    ProjLine() = default;
    explicit ProjLine(const QVector& coords);
    ProjLine(GaussRat a, GaussRat b, GaussRat c);

    const QVector& coords() const { return v_; }
    const GaussRat& operator[](std::size_t k) const { return v_[k]; }
    bool contains(const ProjPoint& p) const;
    ProjLine conj() const;

    friend bool operator==(const ProjLine&, const ProjLine&) = default;

  private:
    QVector v_;
};

ProjLine join(const ProjPoint& p, const ProjPoint& q);
ProjPoint meet(const ProjLine& l, const ProjLine& m);
bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r);

enum class Plane { Image, Dual };

/// Plane conic x^T M x = 0 with M symmetric.
class Conic {
  public:
    Conic() = default;
    explicit Conic(const QMatrix& m, Plane plane = Plane::Image);
    /// From a ternary quadratic form in the first three variables of its ring.
    static Conic from_form(const MPoly& q, Plane plane = Plane::Image);

    const QMatrix& matrix() const { return m_; }
    Plane plane() const { return plane_; }
    /// The quadratic form in the given ring's first three variables.
    MPoly form(const Vars& vars) const;
    GaussRat evaluate(const QVector& x) const;
    GaussRat bilinear(const QVector& x, const QVector& y) const;
    bool contains(const ProjPoint& p) const { return evaluate(p.coords()).is_zero(); }

    bool is_real() const;
    bool is_degenerate() const;
    /// Real conic with a definite matrix (leading principal minors).
    bool has_no_real_points() const;

    friend bool operator==(const Conic&, const Conic&) = default;

  private:
    QMatrix m_;
    Plane plane_ = Plane::Image;
};

/// Dual conic: the adjugate matrix, living in the other plane.
Conic conic_dual(const Conic& c);

/// Plane collineation x -> A x.
class ProjMap {
  public:
    ProjMap() = default;
    explicit ProjMap(const QMatrix& a);

    static ProjMap identity();

    const QMatrix& matrix() const { return a_; }
    ProjPoint apply(const ProjPoint& p) const;
    /// Image of a line: coefficients transform by the inverse transpose.
    ProjLine apply(const ProjLine& l) const;
    /// Image conic {A x : x on c}.
    Conic apply(const Conic& c) const;
    ProjMap inverse() const;
    /// The induced map on the dual plane (inverse transpose).
    ProjMap dual() const;
    bool is_involution() const;

    friend ProjMap operator*(const ProjMap& a, const ProjMap& b);
    friend bool operator==(const ProjMap&, const ProjMap&) = default;

  private:
    QMatrix a_;
};

/// Scales an involution so that A^2 = I and det A = 1. Throws DomainError
/// when A^2 is not a multiple of the identity, or when the required scale
/// is not a Gaussian rational.
QMatrix reflection_normal_form(const QMatrix& a);

/// Cross ratio (p, q; a, b) of four distinct collinear points. Writing
/// a ~ p + s q and b ~ p + t q, the value is s / t; equivalently on an
/// affine line (p, q; a, b) = ((a - p)(b - q)) / ((a - q)(b - p)).
GaussRat cross_ratio(const ProjPoint& p, const ProjPoint& q, const ProjPoint& a, const ProjPoint& b);

/// Distance between two real points with respect to a real conic without
/// real points: half the absolute argument of the cross ratio with the two
/// conjugate intersection points of the joining line and the conic.
/// Result in [0, pi/2] at the current MPFR precision.
Real elliptic_distance(const ProjPoint& p, const ProjPoint& q, const Conic& c);

/// Condition on the parameters of the symbolic conic q (a ternary quadratic
/// form in the variables form_vars, coefficients polynomial in the others)
/// for the line l to be tangent to it. Normalized canonically.
MPoly line_tangent_to_conic_condition(const ProjLine& l, const MPoly& q, std::span<const std::size_t> form_vars);

/// The collineation sending pairs[k].first to pairs[k].second.
ProjMap map_from_point_pairs(std::span<const std::pair<ProjPoint, ProjPoint>> pairs);

struct ReflectionFixed {
    ProjLine line;
    ProjPoint point;
};

/// Pointwise fixed line and isolated fixed point of a projective
/// reflection.
ReflectionFixed reflection_fixed_elements(const ProjMap& s);

}  // namespace absconic
