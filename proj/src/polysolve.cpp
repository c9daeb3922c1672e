#include "absconic/polysolve.hpp"

#include "absconic/algebra.hpp"
#include "absconic/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace absconic {

namespace {

/// Incremental Gaussian elimination that remembers how each stored row is
/// combined from the vectors that were added.
class Eliminator {
  public:
    explicit Eliminator(std::size_t dim) : dim_(dim) {}

    std::size_t size() const { return added_; }

    /// Reduces w against the stored rows. Returns the combination c with
    /// w = sum_j c_j v_j when w lies in the span, nullopt otherwise (and
    /// then stores w as the next vector).
    std::optional<QVector> add(QVector w, bool store = true)
    {
        QVector combo(added_ + 1);
        combo[added_] = GaussRat(1);
        reduce(w, combo);
        if (is_zero_vector(w)) {
            // w + sum_j combo'_j v_j = 0 with combo' the tracked part.
            QVector out(added_);
            for (std::size_t j = 0; j < added_; ++j) out[j] = -combo[j];
            return out;
        }
        if (!store) return std::nullopt;
        std::size_t piv = 0;
        while (w[piv].is_zero()) ++piv;
        GaussRat inv = w[piv].inverse();
        for (auto& x : w) x *= inv;
        for (auto& x : combo) x *= inv;
        rows_.push_back({std::move(w), std::move(combo), piv});
        ++added_;
        return std::nullopt;
    }

    /// Coordinates of w in the stored vectors (w must lie in the span).
    QVector coordinates(QVector w) const
    {
        QVector combo(added_ + 1);
        combo[added_] = GaussRat(1);
        reduce(w, combo);
        if (!is_zero_vector(w)) throw AlgorithmError("vector outside the Krylov span");
        QVector out(added_);
        for (std::size_t j = 0; j < added_; ++j) out[j] = -combo[j];
        return out;
    }

  private:
    struct Row {
        QVector vec;
        QVector combo;
        std::size_t pivot;
    };

    void reduce(QVector& w, QVector& combo) const
    {
        for (const Row& r : rows_) {
            if (w[r.pivot].is_zero()) continue;
            GaussRat f = w[r.pivot];
            for (std::size_t k = 0; k < dim_; ++k) {
                if (!r.vec[k].is_zero()) w[k] -= f * r.vec[k];
            }
            for (std::size_t k = 0; k < r.combo.size(); ++k) {
                if (!r.combo[k].is_zero()) combo[k] -= f * r.combo[k];
            }
        }
    }

    std::size_t dim_;
    std::size_t added_ = 0;
    std::vector<Row> rows_;
};

/// The quotient algebra k[x]/I of a zero-dimensional ideal.
struct Quotient {
    Ideal gb;
    std::vector<Monomial> basis;
    std::map<Monomial, std::size_t, bool (*)(const Monomial&, const Monomial&)> index{
        [](const Monomial& a, const Monomial& b) { return lex_cmp(a, b) < 0; }};
    // mult[v] is the matrix of multiplication by variable v.
    std::vector<QMatrix> mult;

    std::size_t dim() const { return basis.size(); }

    QVector vector_of(const MPoly& reduced) const
    {
        QVector out(dim());
        for (const auto& [m, c] : reduced.terms()) out[index.at(m)] = c;
        return out;
    }
};

Quotient make_quotient(const Ideal& gb)
{
    Quotient q;
    q.gb = gb;
    std::vector<Monomial> lms;
    for (const auto& g : gb.generators()) lms.push_back(leading_monomial(g, gb.order(), gb.block()));
    auto in_normal_set = [&](const Monomial& m) {
        return std::none_of(lms.begin(), lms.end(), [&](const Monomial& l) { return l.divides(m); });
    };
    const std::size_t n = gb.vars()->size();
    std::vector<Monomial> todo{Monomial{}};
    q.index.emplace(Monomial{}, 0);
    q.basis.push_back(Monomial{});
    while (!todo.empty()) {
        Monomial m = todo.back();
        todo.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
            Monomial next = m;
            ++next.e[v];
            if (!in_normal_set(next) || q.index.count(next) != 0) continue;
            q.index.emplace(next, q.basis.size());
            q.basis.push_back(next);
            todo.push_back(next);
        }
    }
    NormalForm nf(gb);
    q.mult.assign(n, QMatrix(q.dim(), q.dim()));
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t b = 0; b < q.dim(); ++b) {
            Monomial m = q.basis[b];
            ++m.e[v];
            auto it = q.index.find(m);
            if (it != q.index.end()) {
                q.mult[v](it->second, b) = GaussRat(1);
                continue;
            }
            QVector col = q.vector_of(nf(MPoly::monomial(gb.vars(), m)));
            for (std::size_t r = 0; r < q.dim(); ++r) q.mult[v](r, b) = col[r];
        }
    }
    return q;
}

/// Minimal polynomial (ascending coefficients, monic) of multiplication by
/// the matrix m, applied to the class of 1. Also returns the Krylov
/// eliminator holding 1, t, t^2, ... .
std::pair<std::vector<GaussRat>, Eliminator> krylov_minpoly(const QMatrix& m)
{
    const std::size_t d = m.rows();
    Eliminator el(d);
    QVector v(d);
    v[0] = GaussRat(1);
    while (true) {
        auto dep = el.add(v);
        if (dep) {
            std::vector<GaussRat> poly(dep->begin(), dep->end());
            for (auto& c : poly) c = -c;
            poly.push_back(GaussRat(1));
            return {poly, std::move(el)};
        }
        v = m * v;
    }
}

MPoly univariate(const std::vector<GaussRat>& coeffs, const Vars& vars, std::size_t var)
{
    std::vector<MPoly::Term> terms;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        Monomial m;
        m.e[var] = static_cast<std::uint16_t>(k);
        terms.emplace_back(m, coeffs[k]);
    }
    return MPoly::from_terms(vars, std::move(terms));
}

/// Quotient by the radical of a zero-dimensional Groebner basis, obtained by
/// adding the squarefree parts of the univariate minimal polynomials.
Quotient radical_quotient(const Ideal& gb)
{
    const std::size_t n = gb.vars()->size();
    Quotient q = make_quotient(gb);
    std::vector<MPoly> extra;
    for (std::size_t v = 0; v < n; ++v) {
        auto [mp, el] = krylov_minpoly(q.mult[v]);
        MPoly f = univariate(mp, gb.vars(), v);
        if (f.is_constant()) continue;
        MPoly sf = squarefree_part(f);
        if (sf.degree(v) < f.degree(v)) extra.push_back(sf);
    }
    if (extra.empty()) return q;
    std::vector<MPoly> gens = gb.generators();
    gens.insert(gens.end(), extra.begin(), extra.end());
    return make_quotient(groebner(Ideal(gb.vars(), gens)));
}

GaussRat eval_univariate(const std::vector<GaussRat>& coeffs, const GaussRat& x)
{
    GaussRat acc(0);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc *= x;
        acc += coeffs[k];
    }
    return acc;
}

Complex eval_univariate(const std::vector<GaussRat>& coeffs, const Complex& x)
{
    Complex acc{Real(0), Real(0)};
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + to_complex(coeffs[k]);
    return acc;
}

Complex eval_derivative(const std::vector<GaussRat>& coeffs, const Complex& x)
{
    Complex acc{Real(0), Real(0)};
    for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * x + to_complex(coeffs[k] * GaussRat(static_cast<long>(k)));
    return acc;
}

Int round_to_int(const Real& x)
{
    Real r = floor(x + Real(0.5));
    Int z;
    mpfr_get_z(z.get_mpz_t(), r.backend().data(), MPFR_RNDN);
    return z;
}

unsigned bit_length(const Rat& r)
{
    if (sgn(r) == 0) return 0;
    return static_cast<unsigned>(mpz_sizeinbase(r.get_num_mpz_t(), 2)) + static_cast<unsigned>(mpz_sizeinbase(r.get_den_mpz_t(), 2));
}

}  // namespace

SolutionSet solve_zero_dim(const Ideal& ideal, const SolveOptions& options)
{
    SolutionSet out;
    out.vars = ideal.vars();
    UnivariateRepresentation rep = univariate_representation(ideal);
    out.dimension = rep.dimension;
    if (rep.dimension < 0) return out;
    if (rep.dimension > 0) {
        out.residual = "positive-dimensional solution set (dimension " + std::to_string(out.dimension) + ")";
        return out;
    }
    const std::size_t n = ideal.vars()->size();
    const std::size_t d = rep.minpoly.size() - 1;
    out.count = d;
    std::vector<GaussRat> dq;
    for (std::size_t k = 1; k <= d; ++k) dq.push_back(rep.minpoly[k] * GaussRat(static_cast<long>(k)));
    std::vector<GaussRat> ddq;
    for (std::size_t k = 1; k < dq.size(); ++k) ddq.push_back(dq[k] * GaussRat(static_cast<long>(k)));

    // Clear denominators: any Gaussian rational root r of an integral
    // polynomial has r * lc in Z[i].
    MPoly mt_poly = univariate(rep.minpoly, ideal.vars(), 0).normalized();
    std::vector<GaussRat> integral(d + 1);
    for (const auto& [m, c] : mt_poly.terms()) integral[m.e[0]] = c;
    const GaussRat& lc = integral.back();
    unsigned coeff_bits = 0;
    for (const auto& c : integral) coeff_bits = std::max({coeff_bits, bit_length(c.re()), bit_length(c.im())});

    const unsigned bits = options.precision_bits != 0 ? options.precision_bits : default_precision_bits();
    const unsigned max_bits = std::max(bits, 2 * coeff_bits + 64);
    std::vector<RootDisc> roots;
    unsigned work_bits = std::min(max_bits, std::max(bits, 128U));
    for (;;) {
        PrecisionScope scope(work_bits);
        roots = polynomial_roots(integral);
        bool isolated = std::all_of(roots.begin(), roots.end(), [](const RootDisc& r) { return r.isolated; });
        if (isolated || work_bits >= max_bits) break;
        work_bits = std::min(max_bits, 2 * work_bits);
    }
    const unsigned lc_bits = std::max(bit_length(lc.re()), bit_length(lc.im()));
    for (const RootDisc& root : roots) {
        bool certified = false;
        {
            double mag = std::max(1.0, static_cast<double>(abs(root.center)));
            unsigned need = lc_bits + static_cast<unsigned>(std::log2(mag)) + 64;
            PrecisionScope scope(std::max(need, work_bits));
            Complex z = refine_root(integral, Complex{Real(root.center.re), Real(root.center.im)});
            Complex scaled = z * to_complex(lc);
            GaussRat cand = GaussRat(Rat(round_to_int(scaled.re)), Rat(round_to_int(scaled.im))) / lc;
            if (eval_univariate(integral, cand).is_zero()) {
                const GaussRat inv = eval_univariate(dq, cand).inverse();
                QVector point(n);
                for (std::size_t v = 0; v < n; ++v) point[v] = eval_univariate(rep.numerators[v], cand) * inv;
                certified = std::all_of(ideal.generators().begin(), ideal.generators().end(),
                                        [&](const MPoly& g) { return g.evaluate(point).is_zero(); });
                if (certified) out.exact.push_back(std::move(point));
            }
        }
        if (certified) continue;
        PrecisionScope scope(work_bits);
        BoxedSolution box;
        Complex z = refine_root(integral, Complex{Real(root.center.re), Real(root.center.im)});
        const Complex den = eval_univariate(dq, z);
        const Complex dden = eval_univariate(ddq, z);
        Real grow = 1;
        for (std::size_t v = 0; v < n; ++v) {
            const Complex num = eval_univariate(rep.numerators[v], z);
            box.center.push_back(num / den);
            // d/dt (g / q') = (g' q' - g q'') / q'^2
            Real slope = abs((eval_derivative(rep.numerators[v], z) * den - num * dden) / (den * den));
            if (slope > grow) grow = slope;
        }
        box.radius = Real(root.radius) * grow * Real(1.01);
        box.isolated = root.isolated;
        out.boxed.push_back(std::move(box));
    }
    std::sort(out.exact.begin(), out.exact.end(), [](const QVector& a, const QVector& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const GaussRat& x, const GaussRat& y) { return (x <=> y) < 0; });
    });
    if (!out.boxed.empty()) {
        out.residual = std::to_string(out.boxed.size()) + " solution(s) not Gaussian rational; reported as numeric boxes";
    }
    return out;
}

std::vector<MPoly> perfect_square_equations(const MPoly& p, std::size_t u, std::size_t v)
{
    if (p.is_zero()) throw DomainError("perfect-square conditions of the zero form");
    const int deg = p.terms().front().first.e[u] + p.terms().front().first.e[v];
    for (const auto& [m, c] : p.terms()) {
        if (m.e[u] + m.e[v] != deg) throw DomainError("binary form is not homogeneous in the form variables");
    }
    if (deg % 2 != 0) throw DomainError("perfect-square conditions need even degree");
    const int k = deg / 2;
    VarList names = *p.vars();
    std::vector<std::size_t> unknown;
    for (int j = 0; j <= k; ++j) {
        std::string name = "c" + std::to_string(j);
        while (std::find(names.begin(), names.end(), name) != names.end()) name += "_";
        unknown.push_back(names.size());
        names.push_back(name);
    }
    if (names.size() > kMaxVars) throw DomainError("too many variables for the perfect-square system");
    Vars ring = make_vars(names);
    MPoly root(ring);
    for (int j = 0; j <= k; ++j) {
        Monomial m;
        m.e[u] = static_cast<std::uint16_t>(k - j);
        m.e[v] = static_cast<std::uint16_t>(j);
        root += MPoly::variable(ring, unknown[j]) * MPoly::monomial(ring, m);
    }
    MPoly diff = p.in_ring(ring) - root * root;
    std::size_t fv[] = {u, v};
    auto coeffs = coefficients_wrt(diff, fv);
    std::vector<MPoly> eqs(static_cast<std::size_t>(deg) + 1, MPoly(ring));
    for (auto& [m, c] : coeffs) eqs[m.e[v]] = c;
    return eqs;
}

Ideal perfect_square_conditions(const MPoly& p, std::size_t u, std::size_t v)
{
    std::vector<MPoly> eqs = perfect_square_equations(p, u, v);
    const VarList& all = *eqs.front().vars();
    VarList names;
    for (std::size_t k = 0; k < all.size(); ++k) {
        if (k != u && k != v) names.push_back(all[k]);
    }
    Vars ring = make_vars(names);
    std::vector<MPoly> gens;
    for (const auto& e : eqs) gens.push_back(e.in_ring(ring));
    std::vector<std::string> drop(all.begin() + static_cast<long>(p.nvars()), all.end());
    return eliminate(Ideal(ring, std::move(gens)), drop);
}

}  // namespace absconic

namespace absconic {

MPoly norm_over_zero_set(const Ideal& points, const MPoly& f)
{
    Ideal gb = groebner(points.order() == TermOrder::GrevLex ? points : points.with_order(TermOrder::GrevLex));
    if (gb.is_unit()) return MPoly::constant(f.vars(), GaussRat(1));
    if (dimension(gb) > 0) throw DomainError("norm over a positive-dimensional zero set");
    const Vars& pv = gb.vars();
    std::vector<std::size_t> map(pv->size());
    for (std::size_t k = 0; k < pv->size(); ++k) {
        if (!f.has_var((*pv)[k])) throw DomainError("norm: variable " + (*pv)[k] + " missing from the polynomial ring");
        map[k] = f.index_of((*pv)[k]);
    }
    const Quotient q = radical_quotient(gb);
    const NormalForm nf(q.gb);
    const std::size_t d = q.dim();
    PolyMatrix m(d, d, MPoly(f.vars()));
    std::map<Monomial, QMatrix, bool (*)(const Monomial&, const Monomial&)> cache(
        [](const Monomial& a, const Monomial& b) { return lex_cmp(a, b) < 0; });
    for (const auto& [mono, c] : f.terms()) {
        Monomial point_part, param_part = mono;
        for (std::size_t k = 0; k < map.size(); ++k) {
            point_part.e[k] = mono.e[map[k]];
            param_part.e[map[k]] = 0;
        }
        auto it = cache.find(point_part);
        if (it == cache.end()) {
            QMatrix mult(d, d);
            for (std::size_t b = 0; b < d; ++b) {
                QVector col = q.vector_of(nf(MPoly::monomial(q.gb.vars(), q.basis[b] * point_part)));
                for (std::size_t r = 0; r < d; ++r) mult(r, b) = col[r];
            }
            it = cache.emplace(point_part, std::move(mult)).first;
        }
        const MPoly coeff = MPoly::monomial(f.vars(), param_part, c);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t b = 0; b < d; ++b) {
                if (!it->second(r, b).is_zero()) m(r, b) += coeff * it->second(r, b);
            }
        }
    }
    return determinant(m);
}

}  // namespace absconic
