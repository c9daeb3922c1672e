#include "absconic/projective.hpp"

#include "absconic/algebra.hpp"
#include "absconic/error.hpp"

#include <boost/math/constants/constants.hpp>

namespace absconic {

namespace {

QVector checked_triple(const QVector& v, const char* what)
{
    if (v.size() != 3) throw DomainError(std::string(what) + ": expected three coordinates");
    if (is_zero_vector(v)) throw DomainError(std::string(what) + ": zero vector");
    return normalize_vector(v);
}

QVector conj_vector(const QVector& v)
{
    QVector out;
    for (const auto& x : v) out.push_back(x.conj());
    return out;
}

QMatrix adjugate_transpose(const QMatrix& a) { return adjugate(a).transpose(); }

}  // namespace

ProjPoint::ProjPoint(const QVector& coords) : v_(checked_triple(coords, "point")) {}

ProjPoint::ProjPoint(GaussRat x, GaussRat y, GaussRat z) : ProjPoint(QVector{std::move(x), std::move(y), std::move(z)}) {}

bool ProjPoint::is_real() const
{
    for (const auto& x : v_) {
        if (!x.is_real()) return false;
    }
    return true;
}

ProjPoint ProjPoint::conj() const { return ProjPoint(conj_vector(v_)); }

ProjLine::ProjLine(const QVector& coords) : v_(checked_triple(coords, "line")) {}

ProjLine::ProjLine(GaussRat a, GaussRat b, GaussRat c) : ProjLine(QVector{std::move(a), std::move(b), std::move(c)}) {}

bool ProjLine::contains(const ProjPoint& p) const { return dot(v_, p.coords()).is_zero(); }

ProjLine ProjLine::conj() const { return ProjLine(conj_vector(v_)); }

ProjLine join(const ProjPoint& p, const ProjPoint& q)
{
    QVector l = cross(p.coords(), q.coords());
    if (is_zero_vector(l)) throw DegenerateError("join of coincident points");
    return ProjLine(l);
}

ProjPoint meet(const ProjLine& l, const ProjLine& m)
{
    QVector p = cross(l.coords(), m.coords());
    if (is_zero_vector(p)) throw DegenerateError("meet of coincident lines");
    return ProjPoint(p);
}

bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r)
{
    return dot(cross(p.coords(), q.coords()), r.coords()).is_zero();
}

Conic::Conic(const QMatrix& m, Plane plane) : plane_(plane)
{
    if (m.rows() != 3 || m.cols() != 3) throw DomainError("conic: expected a 3x3 matrix");
    if (!(m == m.transpose())) throw DomainError("conic: matrix not symmetric");
    if (is_zero_vector(m.data())) throw DomainError("conic: zero matrix");
    m_ = normalize_matrix(m);
}

Conic Conic::from_form(const MPoly& q, Plane plane)
{
    if (q.is_zero()) throw DomainError("conic: zero form");
    QMatrix m(3, 3, GaussRat(0));
    for (const auto& [mono, c] : q.terms()) {
        if (mono.degree() != 2) throw DomainError("conic: not a quadratic form");
        std::vector<std::size_t> hit;
        for (std::size_t k = 0; k < kMaxVars; ++k) {
            for (unsigned e = 0; e < mono.e[k]; ++e) hit.push_back(k);
        }
        if (hit[1] > 2) throw DomainError("conic: form uses variables beyond the first three");
        if (hit[0] == hit[1]) {
            m(hit[0], hit[0]) += c;
        } else {
            m(hit[0], hit[1]) += c / GaussRat(2);
            m(hit[1], hit[0]) += c / GaussRat(2);
        }
    }
    return Conic(m, plane);
}

MPoly Conic::form(const Vars& vars) const
{
    if (!vars || vars->size() < 3) throw DomainError("conic form: ring needs three variables");
    MPoly out(vars);
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            out += MPoly::variable(vars, r) * MPoly::variable(vars, c) * m_(r, c);
        }
    }
    return out;
}

GaussRat Conic::bilinear(const QVector& x, const QVector& y) const { return dot(x, m_ * y); }

GaussRat Conic::evaluate(const QVector& x) const { return bilinear(x, x); }

bool Conic::is_real() const
{
    for (const auto& x : m_.data()) {
        if (!x.is_real()) return false;
    }
    return true;
}

bool Conic::is_degenerate() const { return determinant(m_).is_zero(); }

bool Conic::has_no_real_points() const
{
    if (!is_real()) return false;
    const Rat d1 = m_(0, 0).re();
    const Rat d2 = (m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(1, 0)).re();
    const Rat d3 = determinant(m_).re();
    return sgn(d2) > 0 && sgn(d1) == sgn(d3) && sgn(d1) != 0;
}

Conic conic_dual(const Conic& c)
{
    if (c.is_degenerate()) throw DegenerateError("dual of a singular conic");
    return Conic(adjugate(c.matrix()), c.plane() == Plane::Image ? Plane::Dual : Plane::Image);
}

ProjMap::ProjMap(const QMatrix& a)
{
    if (a.rows() != 3 || a.cols() != 3) throw DomainError("map: expected a 3x3 matrix");
    if (determinant(a).is_zero()) throw DegenerateError("map: singular matrix");
    a_ = normalize_matrix(a);
}

ProjMap ProjMap::identity() { return ProjMap(QMatrix::identity(3)); }

ProjPoint ProjMap::apply(const ProjPoint& p) const { return ProjPoint(a_ * p.coords()); }

ProjLine ProjMap::apply(const ProjLine& l) const { return ProjLine(adjugate_transpose(a_) * l.coords()); }

Conic ProjMap::apply(const Conic& c) const
{
    QMatrix b = adjugate(a_);
    return Conic(b.transpose() * c.matrix() * b, c.plane());
}

ProjMap ProjMap::inverse() const { return ProjMap(adjugate(a_)); }

ProjMap ProjMap::dual() const { return ProjMap(adjugate_transpose(a_)); }

bool ProjMap::is_involution() const
{
    QMatrix sq = a_ * a_;
    const GaussRat c = sq(0, 0);
    return !c.is_zero() && sq == QMatrix::identity(3, c, GaussRat(0)) && !proportional(a_, QMatrix::identity(3));
}

ProjMap operator*(const ProjMap& a, const ProjMap& b) { return ProjMap(a.a_ * b.a_); }

QMatrix reflection_normal_form(const QMatrix& a)
{
    QMatrix sq = a * a;
    const GaussRat c = sq(0, 0);
    if (c.is_zero() || !(sq == QMatrix::identity(3, c, GaussRat(0)))) {
        throw DomainError("not an involution");
    }
    // With A^2 = cI the scale m = det(A)/c satisfies m^2 = c and m^3 = det A.
    const GaussRat scale = c / determinant(a);
    QMatrix out = a;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t k = 0; k < 3; ++k) out(r, k) *= scale;
    }
    return out;
}

GaussRat cross_ratio(const ProjPoint& p, const ProjPoint& q, const ProjPoint& a, const ProjPoint& b)
{
    const std::array<const ProjPoint*, 4> pts{&p, &q, &a, &b};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (*pts[i] == *pts[j]) throw DegenerateError("cross ratio: coincident points");
        }
    }
    if (!collinear(p, q, a) || !collinear(p, q, b)) throw DegenerateError("cross ratio: points not collinear");
    // A point r off the line turns brackets into coordinates along it:
    // x ~ [x q r] p + [p x r] q.
    const QVector l = cross(p.coords(), q.coords());
    QVector r{GaussRat(0), GaussRat(0), GaussRat(0)};
    std::size_t pivot = 0;
    while (l[pivot].is_zero()) ++pivot;
    r[pivot] = GaussRat(1);
    auto bracket = [&](const QVector& x, const QVector& y) { return dot(cross(x, y), r); };
    const GaussRat s = bracket(p.coords(), a.coords()) / bracket(a.coords(), q.coords());
    const GaussRat t = bracket(p.coords(), b.coords()) / bracket(b.coords(), q.coords());
    return s / t;
}

Real elliptic_distance(const ProjPoint& p, const ProjPoint& q, const Conic& c)
{
    if (!c.has_no_real_points()) throw DomainError("elliptic distance: conic must be real without real points");
    if (!p.is_real() || !q.is_real()) throw DomainError("elliptic distance: points must be real");
    if (p == q) return Real(0);
    // Points p + t q of the conic: cq t^2 + 2 b t + cp = 0 with roots t and
    // conj(t), so the cross ratio t / conj(t) equals t^2 / |t|^2. Written in
    // b and disc = cp cq - b^2 it is symmetric in p and q.
    const Real cp = to_real(c.evaluate(p.coords()).re());
    const Real cq = to_real(c.evaluate(q.coords()).re());
    const Real b = to_real(c.bilinear(p.coords(), q.coords()).re());
    const Real disc = cp * cq - b * b;
    const Real norm = b * b + disc;
    const Complex cr{(b * b - disc) / norm, -2 * b * sqrt(disc) / norm};
    Real r = arg(cr);
    if (r >= boost::math::constants::pi<Real>()) r -= 2 * boost::math::constants::pi<Real>();
    return abs(r) / 2;
}

MPoly line_tangent_to_conic_condition(const ProjLine& l, const MPoly& q, std::span<const std::size_t> form_vars)
{
    if (form_vars.size() != 3) throw DomainError("tangency: need three form variables");
    std::size_t pivot = 0;
    while (l[pivot].is_zero()) ++pivot;
    std::vector<QVector> pts;
    for (std::size_t k = 0; k < 3; ++k) {
        if (k == pivot) continue;
        QVector v{GaussRat(0), GaussRat(0), GaussRat(0)};
        v[k] = l[pivot];
        v[pivot] = -l[k];
        pts.push_back(v);
    }
    const PolyMatrix m = quadratic_form_matrix(q, form_vars);
    auto pair = [&](const QVector& x, const QVector& y) {
        MPoly acc(q.vars());
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t c = 0; c < 3; ++c) {
                GaussRat w = x[r] * y[c];
                if (!w.is_zero()) acc += m(r, c) * w;
            }
        }
        return acc;
    };
    MPoly b = pair(pts[0], pts[1]);
    MPoly cond = b * b - pair(pts[0], pts[0]) * pair(pts[1], pts[1]);
    return cond.is_zero() ? cond : cond.normalized();
}

ProjMap map_from_point_pairs(std::span<const std::pair<ProjPoint, ProjPoint>> pairs)
{
    if (pairs.size() != 4) throw DomainError("map from point pairs: need exactly four pairs");
    for (int side = 0; side < 2; ++side) {
        auto pick = [&](std::size_t k) -> const ProjPoint& { return side == 0 ? pairs[k].first : pairs[k].second; };
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
                for (std::size_t k = j + 1; k < 4; ++k) {
                    if (collinear(pick(i), pick(j), pick(k))) {
                        throw DegenerateError("map from point pairs: three points collinear");
                    }
                }
            }
        }
    }
    // Unknown h = row-major entries of H; y x (H x) = 0 per pair.
    QMatrix sys(12, 9, GaussRat(0));
    for (std::size_t k = 0; k < 4; ++k) {
        const QVector& x = pairs[k].first.coords();
        const QVector& y = pairs[k].second.coords();
        for (std::size_t e = 0; e < 3; ++e) {
            const std::size_t i = (e + 1) % 3;
            const std::size_t j = (e + 2) % 3;
            // Component e of y x w is y_i w_j - y_j w_i with w = H x.
            for (std::size_t c = 0; c < 3; ++c) {
                sys(3 * k + e, 3 * j + c) += y[i] * x[c];
                sys(3 * k + e, 3 * i + c) -= y[j] * x[c];
            }
        }
    }
    std::vector<QVector> ker = nullspace(sys);
    if (ker.size() != 1) throw DegenerateError("map from point pairs: no unique solution");
    QMatrix h(3, 3);
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) h(r, c) = ker[0][3 * r + c];
    }
    return ProjMap(h);
}

ReflectionFixed reflection_fixed_elements(const ProjMap& s)
{
    const QMatrix a = reflection_normal_form(s.matrix());
    if (a == QMatrix::identity(3)) throw DomainError("identity is not a reflection");
    const QMatrix id = QMatrix::identity(3);
    std::vector<QVector> plus = nullspace(a - id);
    std::vector<QVector> minus = nullspace(a + id);
    if (plus.size() != 1 || minus.size() != 2) throw DomainError("not a projective reflection");
    return {ProjLine(cross(minus[0], minus[1])), ProjPoint(plus[0])};
}

}  // namespace absconic
