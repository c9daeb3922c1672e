#include "absconic/calibrate.hpp"

#include "absconic/algebra.hpp"

#include <algorithm>

namespace absconic {

namespace {

constexpr std::array<std::pair<std::size_t, std::size_t>, 6> kEntries{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

const std::size_t kForm[3] = {0, 1, 2};

QMatrix symmetric_from(const QVector& v)
{
    QMatrix m(3, 3);
    for (std::size_t k = 0; k < 6; ++k) {
        auto [r, c] = kEntries[k];
        m(r, c) = v[k];
        m(c, r) = v[k];
    }
    return m;
}

QMatrix unit_symmetric(std::size_t k)
{
    QVector v(6);
    v[k] = GaussRat(1);
    return symmetric_from(v);
}

void check_ternary(const MPoly& f, const char* what)
{
    if (f.is_zero() || !f.is_homogeneous()) throw DomainError(std::string(what) + ": expected a nonzero form");
    if (f.nvars() != 3) throw DomainError(std::string(what) + ": expected a form in three variables");
}

Vars xyz() { return make_vars({"x", "y", "z"}); }

// The same form with its variables renamed x, y, z.
MPoly as_xyz(const MPoly& f)
{
    const Vars v = xyz();
    std::vector<MPoly> vals{MPoly::variable(v, 0), MPoly::variable(v, 1), MPoly::variable(v, 2)};
    return f.substitute_all(vals);
}

// Rows of the linear map M -> A^T M A - M on the six conic entries.
QMatrix invariance_rows(const QMatrix& a)
{
    QMatrix rows(6, 6);
    for (std::size_t k = 0; k < 6; ++k) {
        QMatrix e = unit_symmetric(k);
        QMatrix d = a.transpose() * e * a - e;
        for (std::size_t r = 0; r < 6; ++r) rows(r, k) = d(kEntries[r].first, kEntries[r].second);
    }
    return rows;
}

Conic conic_from_conditions(const QMatrix& rows, const char* what)
{
    const std::size_t rk = rank(rows);
    if (rk < 5) {
        throw DegenerateError(std::string(what) + ": linear conditions have rank " + std::to_string(rk) +
                              " < 5, the conic is not determined");
    }
    auto kernel = nullspace(rows);
    if (kernel.empty()) throw DegenerateError(std::string(what) + ": linear conditions are inconsistent");
    Conic c(symmetric_from(kernel.front()));
    if (!c.has_no_real_points()) throw DegenerateError(std::string(what) + ": recovered conic has real points");
    return c;
}

QMatrix stack(const std::vector<QMatrix>& blocks)
{
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    QMatrix out(n, 6);
    std::size_t r0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r) {
            for (std::size_t c = 0; c < 6; ++c) out(r0 + r, c) = b(r, c);
        }
        r0 += b.rows();
    }
    return out;
}

QMatrix point_action(const Reflection& s)
{
    return s.plane == Plane::Image ? s.map.matrix() : s.map.matrix().transpose();
}

Complex cmul_rat(const Complex& z, const GaussRat& g) { return z * to_complex(g); }

}  // namespace

Reflection Reflection::dual() const
{
    return {ProjMap(map.matrix().transpose()), plane == Plane::Image ? Plane::Dual : Plane::Image, source};
}

Reflection find_symmetry(const MPoly& f, Plane plane)
{
    check_ternary(f, "find_symmetry");
    if (f.total_degree() < 1) throw DomainError("find_symmetry: constant form");
    VarList unknown_names;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) unknown_names.push_back("s" + std::to_string(r) + std::to_string(c));
    }
    VarList all{"x", "y", "z"};
    all.insert(all.end(), unknown_names.begin(), unknown_names.end());
    const Vars ring = make_vars(all);
    const Vars unknowns = make_vars(unknown_names);

    const MPoly big = as_xyz(f).in_ring(ring);
    PolyMatrix a(3, 3, MPoly(ring));
    PolyMatrix au(3, 3, MPoly(unknowns));
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            a(r, c) = MPoly::variable(ring, 3 + 3 * r + c);
            au(r, c) = MPoly::variable(unknowns, 3 * r + c);
        }
    }
    std::vector<MPoly> gens;
    const MPoly diff = big - compose_linear(big, a, kForm);
    for (const auto& [mono, coeff] : coefficients_wrt(diff, kForm)) gens.push_back(coeff.in_ring(unknowns));
    const PolyMatrix sq = au * au;
    const MPoly one = MPoly::constant(unknowns, GaussRat(1));
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) gens.push_back(r == c ? sq(r, c) - one : sq(r, c));
    }
    gens.push_back(determinant(au) - one);
    gens.push_back(au(0, 0) + au(1, 1) + au(2, 2) + one);

    const Ideal gb = groebner(Ideal(unknowns, gens));
    if (gb.is_unit()) throw NotUniquelySolvable("not uniquely solvable: no projective reflection preserves the curve", -1, 0);
    const int dim = dimension(gb);
    if (dim > 0) {
        throw NotUniquelySolvable("not uniquely solvable: infinitely many projective reflections (solution set of dimension " +
                                      std::to_string(dim) + ")",
                                  dim, 0);
    }
    const SolutionSet sol = solve_zero_dim(gb);
    if (sol.count != 1) {
        throw NotUniquelySolvable("not uniquely solvable: " + std::to_string(sol.count) + " projective reflections", 0, sol.count);
    }
    if (sol.exact.size() != 1) throw AlgorithmError("find_symmetry: the unique reflection was not certified exactly");
    QMatrix m(3, 3);
    for (std::size_t k = 0; k < 9; ++k) m(k / 3, k % 3) = sol.exact.front()[k];
    return {ProjMap(reflection_normal_form(m)), plane, f};
}

std::vector<MPoly> invariant_conic_space(const Reflection& s, const Vars& vars)
{
    if (!vars || vars->size() < 3) throw DomainError("invariant conics: ring needs three variables");
    auto kernel = nullspace(invariance_rows(reflection_normal_form(s.map.matrix())));
    if (kernel.size() != 4) throw DomainError("invariant conics: not a projective reflection");
    std::vector<MPoly> out;
    for (const auto& v : kernel) {
        MPoly q(vars);
        for (std::size_t k = 0; k < 6; ++k) {
            if (v[k].is_zero()) continue;
            auto [r, c] = kEntries[k];
            q += MPoly::variable(vars, r) * MPoly::variable(vars, c) * (r == c ? v[k] : v[k] * GaussRat(2));
        }
        out.push_back(q.normalized());
    }
    return out;
}

SquareConstraints absolute_points_from_square(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c, const ProjPoint& d)
{
    for (const auto& p : {a, b, c, d}) {
        if (!p.is_real()) throw DomainError("square: image points must be real");
    }
    if (collinear(a, b, c) || collinear(a, b, d) || collinear(a, c, d) || collinear(b, c, d)) {
        throw DegenerateError("square: three of the image points are collinear");
    }
    SquareConstraints out;
    out.vanishing_e = meet(join(a, b), join(c, d));
    out.vanishing_f = meet(join(b, c), join(a, d));
    const ProjLine horizon = join(out.vanishing_e, out.vanishing_f);
    out.vanishing_g = meet(horizon, join(a, c));

    // g = alpha e + beta f; the circular points are alpha e +- i beta f.
    const QVector& e = out.vanishing_e.coords();
    const QVector& f = out.vanishing_f.coords();
    QMatrix ef(3, 2);
    for (std::size_t r = 0; r < 3; ++r) {
        ef(r, 0) = e[r];
        ef(r, 1) = f[r];
    }
    auto ab = solve_linear(ef, out.vanishing_g.coords());
    if (!ab || (*ab)[0].is_zero() || (*ab)[1].is_zero()) throw DegenerateError("square: degenerate vanishing points");
    QVector z(3);
    for (std::size_t r = 0; r < 3; ++r) z[r] = (*ab)[0] * e[r] + GaussRat::i() * (*ab)[1] * f[r];
    const ProjPoint zp(z);
    out.absolute_points = {zp, zp.conj()};

    const QVector& w = zp.coords();
    for (std::size_t k = 0; k < 6; ++k) {
        auto [r, c] = kEntries[k];
        GaussRat v = w[r] * w[c];
        if (r != c) v *= GaussRat(2);
        out.conditions[0][k] = v.re();
        out.conditions[1][k] = v.im();
    }
    return out;
}

Conic calibrate_squares(std::span<const std::array<ProjPoint, 4>> squares)
{
    if (squares.empty()) throw DomainError("calibrate squares: no squares given");
    QMatrix rows(2 * squares.size(), 6);
    for (std::size_t s = 0; s < squares.size(); ++s) {
        const auto& q = squares[s];
        SquareConstraints sc = absolute_points_from_square(q[0], q[1], q[2], q[3]);
        for (std::size_t k = 0; k < 2; ++k) {
            for (std::size_t c = 0; c < 6; ++c) rows(2 * s + k, c) = GaussRat(sc.conditions[k][c]);
        }
    }
    return conic_from_conditions(rows, "calibrate squares");
}

Conic calibrate_revolution(std::span<const Reflection> reflections)
{
    if (reflections.empty()) throw DomainError("calibrate revolution: no reflections given");
    std::vector<QMatrix> blocks;
    for (const auto& s : reflections) {
        if (!s.map.is_involution()) throw DomainError("calibrate revolution: map is not an involution");
        blocks.push_back(invariance_rows(reflection_normal_form(point_action(s))));
    }
    return conic_from_conditions(stack(blocks), "calibrate revolution");
}

Conic calibrate_revolution(std::span<const MPoly> pictures)
{
    std::vector<Reflection> found;
    for (const auto& f : pictures) found.push_back(find_symmetry(f));
    return calibrate_revolution(std::span<const Reflection>(found));
}

namespace {

// Ideals of the singular points of f (a form in x, y, z) in the charts
// z = 1 (variables x, y) and z = 0, y = 1 (variable x).
std::pair<Ideal, Ideal> singular_chart_ideals(const MPoly& f)
{
    const Vars v = xyz();
    const MPoly g = as_xyz(f);
    std::vector<MPoly> eqs{g, g.derivative(0), g.derivative(1), g.derivative(2)};
    const Vars c1 = make_vars({"x", "y"});
    const Vars c2 = make_vars({"x"});
    std::vector<MPoly> e1, e2;
    const MPoly one = MPoly::constant(v, GaussRat(1));
    const MPoly zero(v);
    for (const auto& e : eqs) {
        MPoly a = e.substitute(2, one);
        if (!a.is_zero()) e1.push_back(a.in_ring(c1));
        MPoly b = e.substitute(2, zero).substitute(1, one);
        if (!b.is_zero()) e2.push_back(b.in_ring(c2));
    }
    return {Ideal(c1, e1), Ideal(c2, e2)};
}

}  // namespace

std::vector<SingularPoint> singular_points(const MPoly& f, const SolveOptions& options)
{
    check_ternary(f, "singular points");
    const MPoly g = as_xyz(f);
    const unsigned bits = options.precision_bits != 0 ? options.precision_bits : default_precision_bits();
    PrecisionScope scope(bits);
    auto [j1, j2] = singular_chart_ideals(g);
    std::vector<SingularPoint> out;
    auto classify = [&](SingularPoint& p) {
        if (!p.exact) return;
        QMatrix hv(3, 3);
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t c = 0; c < 3; ++c) hv(r, c) = g.derivative(r).derivative(c).evaluate(p.exact->coords());
        }
        p.node = rank(hv) == 2;
    };
    auto add_chart = [&](const Ideal& j, auto lift) {
        SolutionSet s = solve_zero_dim(j, options);
        if (s.dimension > 0) throw DomainError("singular points: positive-dimensional singular locus (the form is not squarefree)");
        for (const auto& e : s.exact) {
            SingularPoint p;
            QVector x = lift(e);
            p.exact = ProjPoint(x);
            for (std::size_t k = 0; k < 3; ++k) p.approx[k] = to_complex(x[k]);
            p.radius = 0;
            p.real = p.exact->is_real();
            classify(p);
            out.push_back(std::move(p));
        }
        for (const auto& b : s.boxed) {
            SingularPoint p;
            std::vector<Complex> c = b.center;
            if (c.size() == 2) {
                p.approx = {c[0], c[1], Complex{Real(1), Real(0)}};
            } else {
                p.approx = {c[0], Complex{Real(1), Real(0)}, Complex{Real(0), Real(0)}};
            }
            p.radius = b.radius;
            p.real = std::none_of(c.begin(), c.end(), [&](const Complex& z) { return abs(z.im) > b.radius; });
            out.push_back(std::move(p));
        }
    };
    add_chart(j1, [](const QVector& e) { return QVector{e[0], e[1], GaussRat(1)}; });
    add_chart(j2, [](const QVector& e) { return QVector{e[0], GaussRat(1), GaussRat(0)}; });
    const QVector corner{GaussRat(1), GaussRat(0), GaussRat(0)};
    bool corner_singular = g.evaluate(corner).is_zero();
    for (std::size_t k = 0; k < 3 && corner_singular; ++k) corner_singular = g.derivative(k).evaluate(corner).is_zero();
    if (corner_singular) {
        SingularPoint p;
        p.exact = ProjPoint(corner);
        p.approx = {Complex{Real(1), Real(0)}, Complex{Real(0), Real(0)}, Complex{Real(0), Real(0)}};
        p.radius = 0;
        p.real = true;
        classify(p);
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

struct Frame {
    // Columns: the isolated eigenvector of s*, then a basis of the plane
    // eigenspace. Line coordinates l = M lbar.
    QMatrix m;
    QMatrix m_inv;
};

// Smallest integer multiple of a real rational vector; other vectors are
// returned unchanged.
QVector primitive(const QVector& v)
{
    if (!std::all_of(v.begin(), v.end(), [](const GaussRat& c) { return c.is_real(); })) return v;
    Int den = 1, num = 0;
    for (const auto& c : v) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re().get_den_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.re().get_num_mpz_t());
    }
    QVector out;
    for (const auto& c : v) out.push_back(GaussRat(Rat(c.re() * den / num)));
    return out;
}

// Lagrange-Gauss reduction of a basis of a rank-2 lattice in Z^3.
void reduce_pair(QVector& u, QVector& v)
{
    if (!std::all_of(u.begin(), u.end(), [](const GaussRat& c) { return c.is_real(); }) ||
        !std::all_of(v.begin(), v.end(), [](const GaussRat& c) { return c.is_real(); })) {
        return;
    }
    auto norm2 = [](const QVector& w) { return dot(w, w).re(); };
    for (;;) {
        if (norm2(u) > norm2(v)) std::swap(u, v);
        Rat q = dot(u, v).re() / norm2(u);
        Int mu;
        Int twice = q.get_num() * 2 + q.get_den();
        Int den2 = q.get_den() * 2;
        mpz_fdiv_q(mu.get_mpz_t(), twice.get_mpz_t(), den2.get_mpz_t());
        if (mu == 0) return;
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= GaussRat(Rat(mu)) * u[k];
    }
}

Frame canonical_frame(const QMatrix& s)
{
    const QMatrix a = reflection_normal_form(s);
    const QMatrix id = QMatrix::identity(3);
    auto plus = nullspace(a - id);
    auto minus = nullspace(a + id);
    if (plus.size() + minus.size() != 3 || plus.empty() || minus.empty()) throw DomainError("torus calibration: symmetry is not a reflection");
    const auto& isolated = plus.size() == 1 ? plus : minus;
    const auto& pair = plus.size() == 1 ? minus : plus;
    const QVector e1 = primitive(isolated[0]);
    QVector e2 = primitive(pair[0]);
    QVector e3 = primitive(pair[1]);
    reduce_pair(e2, e3);
    Frame fr{QMatrix(3, 3), QMatrix()};
    for (std::size_t r = 0; r < 3; ++r) {
        fr.m(r, 0) = e1[r];
        fr.m(r, 1) = e2[r];
        fr.m(r, 2) = e3[r];
    }
    fr.m_inv = inverse(fr.m);
    return fr;
}

struct PairResult {
    std::vector<Candidate> found;
    std::string note;
};

QMatrix canonical_conic(const GaussRat& a2, const GaussRat& a3, const GaussRat& a4)
{
    const GaussRat half = a3 / GaussRat(2);
    return QMatrix{{GaussRat(1), GaussRat(0), GaussRat(0)}, {GaussRat(0), a2, half}, {GaussRat(0), half, a4}};
}

PairResult solve_node_pair(const MPoly& dual_xyz, const Frame& fr, const ProjPoint& node, const SolveOptions& options)
{
    const Vars ring = make_vars({"x", "y", "z", "a2", "a3", "a4"});
    const MPoly x = MPoly::variable(ring, 0), y = MPoly::variable(ring, 1), z = MPoly::variable(ring, 2);
    const MPoly a2 = MPoly::variable(ring, 3), a3 = MPoly::variable(ring, 4), a4 = MPoly::variable(ring, 5);
    const MPoly tbar3 = compose_linear(dual_xyz, fr.m).normalized();
    const MPoly tbar = tbar3.in_ring(ring);
    const MPoly conic = x * x + a2 * y * y + a3 * y * z + a4 * z * z;

    // S1: the line of the node is tangent to the candidate.
    const ProjLine line(fr.m.transpose() * node.coords());
    const MPoly s1 = line_tangent_to_conic_condition(line, conic, kForm);
    // S2: tangential intersection, as a perfect-square resultant. Both
    // curves are even in x, so the resultant is a form S in (x^2, y^2) and
    // its square root is even or odd in x.
    const MPoly res = resultant(tbar, conic, 2);
    if (res.is_zero()) return {{}, "resultant vanishes identically"};
    const std::size_t xy[2] = {0, 1};
    std::array<MPoly, 5> sk;
    sk.fill(MPoly(ring));
    for (const auto& [m, c] : coefficients_wrt(res, xy)) {
        if (m.e[0] % 2 != 0 || m.e[1] % 2 != 0 || m.e[1] > 8) throw AlgorithmError("resultant is not even in the symmetry coordinate");
        sk[m.e[1] / 2] = c;
    }

    // Inequations: nonzero Hessian, no singular point of the dual picture.
    const MPoly hess = hessian_det(conic, kForm);
    auto [j1, j2] = singular_chart_ideals(tbar3);
    const MPoly one = MPoly::constant(ring, GaussRat(1));
    MPoly avoid = norm_over_zero_set(j1, conic.substitute(2, one));
    avoid *= norm_over_zero_set(j2, conic.substitute(2, MPoly(ring)).substitute(1, one));

    const Vars sv = make_vars({"a2", "a3", "a4", "T"});
    std::array<MPoly, 5> s;
    for (std::size_t k = 0; k < 5; ++k) s[k] = sk[k].in_ring(sv);
    const MPoly s1v = s1.in_ring(sv);
    const MPoly t = MPoly::variable(sv, "T");
    const MPoly unit = MPoly::constant(sv, GaussRat(1));
    const MPoly excluded = (hess * avoid).in_ring(sv);
    const MPoly u = GaussRat(4) * s[0] * s[2] - s[1] * s[1];
    // S = s0 X^4 + s1 X^3 Y + ... + s4 Y^4 with X = x^2, Y = y^2.
    const std::vector<std::vector<MPoly>> systems{
        // Even root with nonzero leading coefficient c0 = sqrt(s0).
        {GaussRat(8) * s[0] * s[0] * s[3] - s[1] * u, GaussRat(64) * s[0] * s[0] * s[0] * s[4] - u * u, s1v,
         unit - t * excluded * s[0]},
        // Even root c1 XY + c2 Y^2.
        {s[0], s[1], s[3] * s[3] - GaussRat(4) * s[2] * s[4], s1v, unit - t * excluded},
        // Odd root xy (q0 X + q1 Y).
        {s[0], s[4], s[2] * s[2] - GaussRat(4) * s[1] * s[3], s1v, unit - t * excluded},
    };
    SolutionSet sol;
    sol.dimension = -1;
    PairResult out;
    for (const auto& gens : systems) {
        const SolutionSet part = solve_zero_dim(Ideal(sv, gens), options);
        if (part.dimension > 0) {
            out.note = "system is " + part.residual;
            return out;
        }
        sol.dimension = std::max(sol.dimension, part.dimension);
        sol.exact.insert(sol.exact.end(), part.exact.begin(), part.exact.end());
        sol.boxed.insert(sol.boxed.end(), part.boxed.begin(), part.boxed.end());
    }
    const Vars v3 = xyz();

    std::vector<QVector> seen;
    for (const auto& s : sol.exact) {
        QVector abc{s[0], s[1], s[2]};
        if (std::find(seen.begin(), seen.end(), abc) != seen.end()) continue;
        seen.push_back(abc);
        Candidate c;
        c.exact = true;
        const QMatrix dual = fr.m_inv.transpose() * canonical_conic(s[0], s[1], s[2]) * fr.m_inv;
        c.dual_absolute = Conic(dual, Plane::Dual);
        c.absolute = conic_dual(c.dual_absolute);
        for (std::size_t k = 0; k < 6; ++k) {
            c.numeric[k] = to_complex(c.dual_absolute.matrix()(kEntries[k].first, kEntries[k].second));
        }
        c.radius = 0;
        c.hessian = determinant(c.dual_absolute.matrix());
        QVector point(ring->size());
        point[3] = s[0];
        point[4] = s[1];
        point[5] = s[2];
        c.avoids_singular_points = !avoid.evaluate(point).is_zero();
        c.real = c.dual_absolute.is_real();
        c.definite = c.real && c.dual_absolute.has_no_real_points();
        const MPoly r = resultant(dual_xyz, c.dual_absolute.form(v3), 2);
        c.resultant_square = !r.is_zero() && perfect_square_root(r).has_value();
        c.nodes = {node, node.conj()};
        out.found.push_back(std::move(c));
    }
    std::vector<const BoxedSolution*> kept;
    for (const auto& b : sol.boxed) {
        // The same conic can solve two of the systems.
        auto close = [&](const BoxedSolution* o) {
            for (std::size_t k = 0; k < 3; ++k) {
                if (abs(b.center[k] - o->center[k]) > b.radius + o->radius) return false;
            }
            return true;
        };
        if (std::any_of(kept.begin(), kept.end(), close)) continue;
        kept.push_back(&b);
        Candidate c;
        c.exact = false;
        c.radius = b.radius;
        const Complex one_c{Real(1), Real(0)}, zero_c{Real(0), Real(0)};
        const Complex half_a3 = b.center[1] * Complex{Real(0.5), Real(0)};
        const std::array<std::array<Complex, 3>, 3> abar{{{one_c, zero_c, zero_c}, {zero_c, b.center[0], half_a3}, {zero_c, half_a3, b.center[2]}}};
        std::array<std::array<Complex, 3>, 3> tmp{}, full{};
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t col = 0; col < 3; ++col) {
                Complex acc = zero_c;
                for (std::size_t k = 0; k < 3; ++k) acc = acc + abar[r][k] * to_complex(fr.m_inv(k, col));
                tmp[r][col] = acc;
            }
        }
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t col = 0; col < 3; ++col) {
                Complex acc = zero_c;
                for (std::size_t k = 0; k < 3; ++k) acc = acc + cmul_rat(tmp[k][col], fr.m_inv(k, r));
                full[r][col] = acc;
            }
        }
        for (std::size_t k = 0; k < 6; ++k) c.numeric[k] = full[kEntries[k].first][kEntries[k].second];
        c.real = std::none_of(b.center.begin(), b.center.begin() + 3, [&](const Complex& w) { return abs(w.im) > b.radius; });
        if (c.real) {
            const Real m1 = full[0][0].re;
            const Real m2 = full[0][0].re * full[1][1].re - full[0][1].re * full[0][1].re;
            const Real m3 = full[0][0].re * (full[1][1].re * full[2][2].re - full[1][2].re * full[2][1].re) -
                            full[0][1].re * (full[1][0].re * full[2][2].re - full[1][2].re * full[2][0].re) +
                            full[0][2].re * (full[1][0].re * full[2][1].re - full[1][1].re * full[2][0].re);
            c.definite = m2 > 0 && ((m1 > 0 && m3 > 0) || (m1 < 0 && m3 < 0));
        }
        c.avoids_singular_points = true;
        c.nodes = {node, node.conj()};
        out.found.push_back(std::move(c));
    }
    return out;
}

bool candidate_less(const Candidate& a, const Candidate& b)
{
    if (a.exact != b.exact) return a.exact;
    if (a.exact) {
        const auto& x = a.dual_absolute.matrix().data();
        const auto& y = b.dual_absolute.matrix().data();
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                            [](const GaussRat& p, const GaussRat& q) { return (p <=> q) < 0; });
    }
    for (std::size_t k = 0; k < 6; ++k) {
        if (a.numeric[k].re != b.numeric[k].re) return a.numeric[k].re < b.numeric[k].re;
        if (a.numeric[k].im != b.numeric[k].im) return a.numeric[k].im < b.numeric[k].im;
    }
    return false;
}

}  // namespace

CandidateSet calibrate_torus(const MPoly& picture, const MPoly& dual_picture, const std::optional<ProjPoint>& node,
                             const SolveOptions& options)
{
    check_ternary(dual_picture, "torus calibration");
    const unsigned bits = options.precision_bits != 0 ? options.precision_bits : default_precision_bits();
    PrecisionScope scope(bits);
    CandidateSet out;
    out.symmetry = find_symmetry(dual_picture, Plane::Dual);
    const QMatrix& a = out.symmetry.map.matrix();
    const ProjMap s(a.transpose());
    const Frame fr = canonical_frame(a);
    const MPoly dual_xyz = as_xyz(dual_picture);

    std::vector<ProjPoint> nodes;
    if (node) {
        if (node->is_real()) throw DomainError("torus calibration: the node must be non-real");
        nodes.push_back(*node);
    } else {
        if (picture.is_zero()) throw DomainError("torus calibration: give a node or the picture to search for nodes");
        check_ternary(picture, "torus calibration");
        std::size_t irrational = 0;
        for (const auto& p : singular_points(picture, options)) {
            if (!p.exact) {
                if (!p.real) ++irrational;
                continue;
            }
            if (p.real || p.node != true) continue;
            nodes.push_back(*p.exact);
        }
        if (irrational > 0) {
            out.notes.push_back(std::to_string(irrational) + " non-real singular point(s) of the picture are not Gaussian rational and were skipped");
        }
    }
    for (const auto& n : nodes) {
        if (s.apply(n) == n) {
            out.notes.push_back("node fixed by the symmetry skipped");
            continue;
        }
        bool known = std::any_of(out.node_pairs.begin(), out.node_pairs.end(),
                                 [&](const auto& pr) { return pr.first == n || pr.second == n; });
        if (!known) out.node_pairs.emplace_back(n, n.conj());
    }
    if (out.node_pairs.empty()) throw DomainError("torus calibration: no admissible non-real node");

    std::vector<Candidate> all;
    for (const auto& [n, nc] : out.node_pairs) {
        PairResult r = solve_node_pair(dual_xyz, fr, n, options);
        if (!r.note.empty()) out.notes.push_back(r.note);
        for (auto& c : r.found) {
            auto same = [&](const Candidate& o) { return o.exact && c.exact && o.dual_absolute == c.dual_absolute; };
            if (std::any_of(all.begin(), all.end(), same)) continue;
            all.push_back(std::move(c));
        }
    }
    for (auto& c : all) {
        if (c.real && c.definite) {
            out.candidates.push_back(std::move(c));
        } else {
            out.rejected.push_back(std::move(c));
        }
    }
    std::sort(out.candidates.begin(), out.candidates.end(), candidate_less);
    std::sort(out.rejected.begin(), out.rejected.end(), candidate_less);
    if (out.candidates.empty()) out.notes.push_back("no real definite candidate (non-generic input?)");
    return out;
}

}  // namespace absconic
