#include "absconic/algebra.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

namespace absconic {

namespace {

std::vector<std::size_t> leading_indices(std::size_t n)
{
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

MPoly content_in(const MPoly& f, std::size_t var);

MPoly primitive_part_in(const MPoly& f, std::size_t var)
{
    MPoly c = content_in(f, var);
    MPoly p = c.is_constant() ? f : divide_exact(f, c);
    return p.normalized();
}

/// Pseudo-remainder of a by b in `var` (up to a nonzero factor).
MPoly pseudo_remainder(MPoly a, const MPoly& b, std::size_t var)
{
    const int db = b.degree(var);
    auto bc = b.coefficients_in(var);
    const MPoly& lb = bc.back();
    while (!a.is_zero() && a.degree(var) >= db) {
        int da = a.degree(var);
        MPoly la = a.coefficients_in(var).back();
        Monomial shift;
        shift.e[var] = static_cast<std::uint16_t>(da - db);
        a = lb * a - (la * b).mul_term(shift, GaussRat(1));
    }
    return a;
}

MPoly gcd_rec(const MPoly& f, const MPoly& g);

MPoly content_in(const MPoly& f, std::size_t var)
{
    auto coeffs = f.coefficients_in(var);
    MPoly acc(f.vars());
    for (const auto& c : coeffs) {
        if (c.is_zero()) continue;
        acc = acc.is_zero() ? c.normalized() : gcd_rec(acc, c);
        if (acc.is_constant()) return MPoly::constant(f.vars(), GaussRat(1));
    }
    return acc;
}

MPoly gcd_rec(const MPoly& f, const MPoly& g)
{
    if (f.is_zero()) return g.normalized();
    if (g.is_zero()) return f.normalized();
    if (f.is_constant() || g.is_constant()) return MPoly::constant(f.vars(), GaussRat(1));
    std::size_t var = kMaxVars;
    for (std::size_t v = 0; v < f.nvars(); ++v) {
        if (f.degree(v) > 0 || g.degree(v) > 0) {
            var = v;
            break;
        }
    }
    if (f.degree(var) == 0) return gcd_rec(f, content_in(g, var));
    if (g.degree(var) == 0) return gcd_rec(content_in(f, var), g);

    MPoly cf = content_in(f, var);
    MPoly cg = content_in(g, var);
    MPoly c = gcd_rec(cf, cg);
    MPoly a = (cf.is_constant() ? f : divide_exact(f, cf)).normalized();
    MPoly b = (cg.is_constant() ? g : divide_exact(g, cg)).normalized();
    if (a.degree(var) < b.degree(var)) std::swap(a, b);
    for (;;) {
        MPoly r = pseudo_remainder(a, b, var);
        if (r.is_zero()) break;
        if (r.degree(var) == 0) {
            b = MPoly::constant(f.vars(), GaussRat(1));
            break;
        }
        a = std::move(b);
        b = primitive_part_in(r, var);
    }
    return (c * b).normalized();
}

}  // namespace

MPoly compose_linear(const MPoly& form, const QMatrix& a)
{
    auto idx = leading_indices(a.rows());
    return compose_linear(form, a, idx);
}

MPoly compose_linear(const MPoly& form, const QMatrix& a, std::span<const std::size_t> form_vars)
{
    if (!a.is_square() || a.rows() != form_vars.size() || form_vars.size() > form.nvars()) {
        throw DomainError("compose_linear: matrix size does not match the number of form variables");
    }
    const Vars& vars = form.vars();
    std::vector<MPoly> values;
    values.reserve(form.nvars());
    for (std::size_t v = 0; v < form.nvars(); ++v) values.push_back(MPoly::variable(vars, v));
    for (std::size_t r = 0; r < form_vars.size(); ++r) {
        MPoly img(vars);
        for (std::size_t c = 0; c < form_vars.size(); ++c) {
            if (!a(r, c).is_zero()) img += MPoly::variable(vars, form_vars[c]) * a(r, c);
        }
        values[form_vars[r]] = std::move(img);
    }
    return form.substitute_all(values);
}

MPoly compose_linear(const MPoly& form, const PolyMatrix& a, std::span<const std::size_t> form_vars)
{
    if (!a.is_square() || a.rows() != form_vars.size() || form_vars.size() > form.nvars()) {
        throw DomainError("compose_linear: matrix size does not match the number of form variables");
    }
    const Vars& target = a(0, 0).vars();
    std::vector<MPoly> values;
    values.reserve(form.nvars());
    for (std::size_t v = 0; v < form.nvars(); ++v) {
        values.push_back(MPoly::variable(target, (*form.vars())[v]));
    }
    std::vector<MPoly> fv;
    for (auto v : form_vars) fv.push_back(values[v]);
    for (std::size_t r = 0; r < form_vars.size(); ++r) {
        MPoly img(target);
        for (std::size_t c = 0; c < form_vars.size(); ++c) img += a(r, c) * fv[c];
        values[form_vars[r]] = std::move(img);
    }
    return form.substitute_all(values);
}

std::pair<MPoly, MPoly> divide(const MPoly& f, const MPoly& g)
{
    if (g.is_zero()) throw DomainError("division by the zero polynomial");
    MPoly q(f.vars());
    MPoly rem(f.vars());
    MPoly r = f;
    const auto& [gm, gc] = g.leading_term();
    GaussRat ginv = gc.inverse();
    while (!r.is_zero()) {
        const auto& [rm, rc] = r.leading_term();
        if (gm.divides(rm)) {
            Monomial t = rm / gm;
            GaussRat c = rc * ginv;
            q += MPoly::monomial(f.vars(), t, c);
            r -= g.mul_term(t, c);
        } else {
            rem += MPoly::monomial(f.vars(), rm, rc);
            r -= MPoly::monomial(f.vars(), rm, rc);
        }
    }
    return {std::move(q), std::move(rem)};
}

MPoly divide_exact(const MPoly& f, const MPoly& g)
{
    if (g.is_zero()) throw DomainError("division by the zero polynomial");
    MPoly q(f.vars());
    MPoly r = f;
    const auto& [gm, gc] = g.leading_term();
    GaussRat ginv = gc.inverse();
    std::vector<MPoly::Term> qterms;
    while (!r.is_zero()) {
        const auto& [rm, rc] = r.leading_term();
        if (!gm.divides(rm)) throw DomainError("divide_exact: polynomial is not divisible");
        Monomial t = rm / gm;
        GaussRat c = rc * ginv;
        r -= g.mul_term(t, c);
        qterms.emplace_back(t, std::move(c));
    }
    return MPoly::from_terms(f.vars(), std::move(qterms));
}

bool divides(const MPoly& g, const MPoly& f) { return divide(f, g).second.is_zero(); }

MPoly determinant(const PolyMatrix& input)
{
    if (!input.is_square()) throw DomainError("determinant of a non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0) throw DomainError("determinant of an empty matrix");
    PolyMatrix m = input;
    const Vars vars = m(0, 0).vars();
    bool negate = false;
    MPoly prev = MPoly::constant(vars, GaussRat(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k).is_zero()) ++piv;
            if (piv == n) return MPoly(vars);
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MPoly num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = prev.is_constant() ? num * prev.constant_term().inverse() : divide_exact(num, prev);
            }
        }
        prev = m(k, k);
    }
    MPoly det = m(n - 1, n - 1);
    return negate ? -det : det;
}

PolyMatrix sylvester_matrix(const MPoly& f, const MPoly& g, std::size_t var)
{
    const int m = f.degree(var);
    const int n = g.degree(var);
    const std::size_t size = static_cast<std::size_t>(m + n);
    auto fc = f.coefficients_in(var);
    auto gc = g.coefficients_in(var);
    PolyMatrix s(size, size, MPoly(f.vars()));
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k <= m; ++k) s(r, r + k) = fc[m - k];
    }
    for (int r = 0; r < m; ++r) {
        for (int k = 0; k <= n; ++k) s(n + r, r + k) = gc[n - k];
    }
    return s;
}

MPoly resultant(const MPoly& f, const MPoly& g, std::size_t var)
{
    if (f.is_zero() || g.is_zero()) throw DomainError("resultant of the zero polynomial");
    if (!same_vars(f.vars(), g.vars())) throw DomainError("resultant: polynomials live in different rings");
    const int m = f.degree(var);
    const int n = g.degree(var);
    if (m == 0) return f.pow(static_cast<unsigned>(n));
    if (n == 0) return g.pow(static_cast<unsigned>(m));
    return determinant(sylvester_matrix(f, g, var));
}

MPoly resultant(const MPoly& f, const MPoly& g, std::string_view var)
{
    return resultant(f, g, f.index_of(var));
}

MPoly discriminant(const MPoly& f, std::size_t var)
{
    const int n = f.degree(var);
    if (n < 2) throw DomainError("discriminant needs degree at least 2 in the variable");
    MPoly res = resultant(f, f.derivative(var), var);
    MPoly lc = f.coefficients_in(var).back();
    MPoly d = lc.is_constant() ? res * lc.constant_term().inverse() : divide_exact(res, lc);
    if ((n * (n - 1) / 2) % 2 == 1) d = -d;
    return d;
}

MPoly discriminant(const MPoly& f, std::string_view var) { return discriminant(f, f.index_of(var)); }

MPoly gcd(const MPoly& f, const MPoly& g)
{
    if (!same_vars(f.vars(), g.vars())) throw DomainError("gcd: polynomials live in different rings");
    if (f.is_zero() && g.is_zero()) return f;
    return gcd_rec(f, g);
}

namespace {

// A repeated factor h^2 of f survives on every line along which f keeps its
// total degree, so a squarefree restriction proves f squarefree.
bool squarefree_on_some_line(const MPoly& f)
{
    if (f.support().size() < 2) return false;
    static const Vars line = make_vars({"t"});
    const MPoly t = MPoly::variable(line, 0);
    const int deg = f.total_degree();
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto next = [&state](long range) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long>((state >> 33) % static_cast<std::uint64_t>(2 * range + 1)) - range;
    };
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<MPoly> values;
        for (std::size_t v = 0; v < f.nvars(); ++v) {
            values.push_back(MPoly::constant(line, GaussRat(next(7))) + t * GaussRat(next(7)));
        }
        const MPoly u = f.substitute_all(values);
        if (u.is_zero() || u.total_degree() != deg) continue;
        if (gcd_rec(u, u.derivative(0)).is_constant()) return true;
    }
    return false;
}

}  // namespace

MPoly squarefree_part(const MPoly& f)
{
    if (f.is_zero()) throw DomainError("squarefree part of the zero polynomial");
    if (f.is_constant()) return MPoly::constant(f.vars(), GaussRat(1));
    if (squarefree_on_some_line(f)) return f.normalized();
    MPoly d = f;
    for (auto v : f.support()) {
        d = gcd(d, f.derivative(v));
        if (d.is_constant()) break;
    }
    if (d.is_constant()) return f.normalized();
    return divide_exact(f, d).normalized();
}

unsigned multiplicity(const MPoly& f, const MPoly& g)
{
    if (f.is_zero()) throw DomainError("multiplicity in the zero polynomial");
    if (g.is_constant()) throw DomainError("multiplicity of a constant factor");
    unsigned m = 0;
    MPoly r = f;
    for (;;) {
        auto [q, rem] = divide(r, g);
        if (!rem.is_zero()) return m;
        r = std::move(q);
        ++m;
    }
}

std::optional<MPoly> perfect_square_root(const MPoly& p)
{
    if (p.is_zero()) return p;
    const auto& [lm, lc] = p.leading_term();
    Monomial half;
    for (std::size_t k = 0; k < kMaxVars; ++k) {
        if (lm.e[k] % 2 != 0) return std::nullopt;
        half.e[k] = static_cast<std::uint16_t>(lm.e[k] / 2);
    }
    MPoly target = p * lc.inverse();
    MPoly q = MPoly::monomial(p.vars(), half);
    MPoly r = target - q * q;
    // Each step cancels the leading term of r, so the loop visits distinct,
    // strictly decreasing monomials that are below the leading one.
    // Bound: number of monomials of degree <= deg(p)/2 in the occurring variables.
    std::size_t limit = 1;
    {
        const std::size_t n = p.support().size();
        const std::size_t d = static_cast<std::size_t>(p.total_degree()) / 2;
        for (std::size_t k = 1; k <= n; ++k) limit = limit * (d + k) / k;
    }
    for (std::size_t step = 0; !r.is_zero(); ++step) {
        if (step >= limit) return std::nullopt;
        const auto& [rm, rc] = r.leading_term();
        if (!half.divides(rm)) return std::nullopt;
        Monomial t = rm / half;
        if (lex_cmp(t, half) >= 0) return std::nullopt;
        MPoly term = MPoly::monomial(p.vars(), t, rc / GaussRat(2));
        r -= term * (q * GaussRat(2) + term);
        q += term;
    }
    return q.normalized();
}

PolyMatrix quadratic_form_matrix(const MPoly& q, std::span<const std::size_t> form_vars)
{
    const std::size_t n = form_vars.size();
    PolyMatrix s(n, n, MPoly(q.vars()));
    for (const auto& [m, c] : q.terms()) {
        unsigned deg = 0;
        std::vector<std::size_t> hit;
        for (std::size_t k = 0; k < n; ++k) {
            deg += m.e[form_vars[k]];
            for (unsigned e = 0; e < m.e[form_vars[k]]; ++e) hit.push_back(k);
        }
        if (deg != 2) throw DomainError("not a quadratic form in the given variables");
        Monomial rest = m;
        for (auto v : form_vars) rest.e[v] = 0;
        if (hit[0] == hit[1]) {
            s(hit[0], hit[0]) += MPoly::monomial(q.vars(), rest, c);
        } else {
            MPoly half = MPoly::monomial(q.vars(), rest, c / GaussRat(2));
            s(hit[0], hit[1]) += half;
            s(hit[1], hit[0]) += half;
        }
    }
    return s;
}

MPoly hessian_det(const MPoly& q, std::span<const std::size_t> form_vars)
{
    if (form_vars.size() != 3) throw DomainError("hessian_det expects three form variables");
    PolyMatrix s = quadratic_form_matrix(q, form_vars);
    PolyMatrix h(3, 3, MPoly(q.vars()));
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) h(r, c) = s(r, c) * GaussRat(2);
    }
    return h(0, 0) * (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1)) - h(0, 1) * (h(1, 0) * h(2, 2) - h(1, 2) * h(2, 0))
           + h(0, 2) * (h(1, 0) * h(2, 1) - h(1, 1) * h(2, 0));
}

MPoly hessian_det(const MPoly& q)
{
    std::vector<std::size_t> fv{0, 1, 2};
    return hessian_det(q, fv);
}

std::vector<std::pair<Monomial, MPoly>> coefficients_wrt(const MPoly& f, std::span<const std::size_t> vars)
{
    std::map<Monomial, std::vector<MPoly::Term>, decltype([](const Monomial& a, const Monomial& b) { return lex_cmp(a, b) > 0; })> groups;
    for (const auto& [m, c] : f.terms()) {
        Monomial key;
        Monomial rest = m;
        for (std::size_t v : vars) {
            key.e[v] = m.e[v];
            rest.e[v] = 0;
        }
        groups[key].emplace_back(rest, c);
    }
    std::vector<std::pair<Monomial, MPoly>> out;
    for (auto& [key, terms] : groups) out.emplace_back(key, MPoly::from_terms(f.vars(), std::move(terms)));
    return out;
}

}  // namespace absconic
