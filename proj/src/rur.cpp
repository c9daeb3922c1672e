#include "absconic/error.hpp"
#include "absconic/polysolve.hpp"
#include "modular.hpp"

#include <algorithm>
#include <map>

namespace absconic {

namespace {

using namespace modp;

constexpr std::size_t kMaxQuotientDim = 1500;

// Univariate polynomials over K, ascending coefficients, no trailing zeros.
template <class K>
using UPoly = std::vector<K>;

template <class K>
void trim(UPoly<K>& a)
{
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

template <class K>
UPoly<K> rem(UPoly<K> a, const UPoly<K>& b)
{
    trim(a);
    const K inv = b.back().inverse();
    while (a.size() >= b.size()) {
        const K f = a.back() * inv;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] = a[shift + k] - f * b[k];
        a.pop_back();
        trim(a);
    }
    return a;
}

template <class K>
UPoly<K> quo(UPoly<K> a, const UPoly<K>& b)
{
    trim(a);
    if (a.size() < b.size()) return {};
    UPoly<K> q(a.size() - b.size() + 1);
    const K inv = b.back().inverse();
    for (std::size_t s = q.size(); s-- > 0;) {
        const K f = a[s + b.size() - 1] * inv;
        q[s] = f;
        for (std::size_t k = 0; k < b.size(); ++k) a[s + k] = a[s + k] - f * b[k];
    }
    return q;
}

template <class K>
UPoly<K> mul(const UPoly<K>& a, const UPoly<K>& b)
{
    if (a.empty() || b.empty()) return {};
    UPoly<K> c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
    }
    trim(c);
    return c;
}

template <class K>
UPoly<K> derivative(const UPoly<K>& a)
{
    UPoly<K> d;
    for (std::size_t k = 1; k < a.size(); ++k) d.push_back(a[k] * K(static_cast<long>(k)));
    trim(d);
    return d;
}

template <class K>
UPoly<K> monic(UPoly<K> a)
{
    const K inv = a.back().inverse();
    for (auto& c : a) c = c * inv;
    return a;
}

template <class K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly<K> r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Dense square matrix over K acting on column vectors.
template <class K>
struct Mat {
    std::size_t n = 0;
    std::vector<K> a;

    explicit Mat(std::size_t dim = 0) : n(dim), a(dim * dim) {}
    K& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
    const K& at(std::size_t r, std::size_t c) const { return a[r * n + c]; }

    std::vector<K> apply(const std::vector<K>& v) const
    {
        std::vector<K> out(n);
        for (std::size_t c = 0; c < n; ++c) {
            if (v[c].is_zero()) continue;
            for (std::size_t r = 0; r < n; ++r) {
                if (!at(r, c).is_zero()) out[r] = out[r] + at(r, c) * v[c];
            }
        }
        return out;
    }
};

/// Gaussian elimination that tracks each stored row as a combination of the
/// vectors added so far.
template <class K>
class Krylov {
  public:
    explicit Krylov(std::size_t dim) : dim_(dim) {}

    std::size_t size() const { return rows_.size(); }

    /// Coefficients c with w = sum c_j v_j, or nullopt (w is then stored).
    std::optional<std::vector<K>> add(std::vector<K> w)
    {
        std::vector<K> combo(rows_.size() + 1);
        combo.back() = K(1);
        reduce(w, combo);
        if (std::all_of(w.begin(), w.end(), [](const K& x) { return x.is_zero(); })) {
            std::vector<K> out(rows_.size());
            for (std::size_t j = 0; j < out.size(); ++j) out[j] = -combo[j];
            return out;
        }
        std::size_t piv = 0;
        while (w[piv].is_zero()) ++piv;
        const K inv = w[piv].inverse();
        for (auto& x : w) x = x * inv;
        for (auto& x : combo) x = x * inv;
        rows_.push_back({std::move(w), std::move(combo), piv});
        return std::nullopt;
    }

  private:
    struct Row {
        std::vector<K> vec;
        std::vector<K> combo;
        std::size_t pivot;
    };

    void reduce(std::vector<K>& w, std::vector<K>& combo) const
    {
        for (const Row& r : rows_) {
            if (w[r.pivot].is_zero()) continue;
            const K f = w[r.pivot];
            for (std::size_t k = 0; k < dim_; ++k) {
                if (!r.vec[k].is_zero()) w[k] = w[k] - f * r.vec[k];
            }
            for (std::size_t k = 0; k < r.combo.size(); ++k) {
                if (!r.combo[k].is_zero()) combo[k] = combo[k] - f * r.combo[k];
            }
        }
    }

    std::size_t dim_;
    std::vector<Row> rows_;
};

template <class K>
struct ModQuotient {
    std::vector<Monomial> basis;
    std::map<Monomial, std::size_t, bool (*)(const Monomial&, const Monomial&)> index{
        [](const Monomial& a, const Monomial& b) { return lex_cmp(a, b) < 0; }};
    std::vector<Mat<K>> mult;

    std::size_t dim() const { return basis.size(); }
};

template <class K>
ModQuotient<K> quotient(const std::vector<gb::Poly<K>>& basis, const gb::Order& ord, std::size_t n)
{
    ModQuotient<K> q;
    auto in_normal_set = [&](const Monomial& m) {
        return std::none_of(basis.begin(), basis.end(), [&](const gb::Poly<K>& g) { return g.lm().divides(m); });
    };
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
            if (q.basis.size() >= kMaxQuotientDim) throw AlgorithmError("quotient algebra too large to solve");
            q.index.emplace(next, q.basis.size());
            q.basis.push_back(next);
            todo.push_back(next);
        }
    }
    const std::size_t d = q.dim();
    q.mult.assign(n, Mat<K>(d));
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t b = 0; b < d; ++b) {
            Monomial m = q.basis[b];
            ++m.e[v];
            auto it = q.index.find(m);
            if (it != q.index.end()) {
                q.mult[v].at(it->second, b) = K(1);
                continue;
            }
            gb::Poly<K> f;
            f.t.push_back({m, K(1)});
            f = gb::normal_form(std::move(f), basis, ord);
            for (const auto& t : f.t) q.mult[v].at(q.index.at(t.m), b) = t.c;
        }
    }
    return q;
}

/// Monic minimal polynomial of m applied to `start`, with the Krylov
/// eliminator of start, m start, m^2 start, ...
template <class K>
std::pair<UPoly<K>, Krylov<K>> minpoly_of(const Mat<K>& m, std::vector<K> v)
{
    Krylov<K> kr(m.n);
    while (true) {
        auto dep = kr.add(v);
        if (dep) {
            UPoly<K> p;
            for (const auto& c : *dep) p.push_back(-c);
            p.push_back(K(1));
            return {std::move(p), std::move(kr)};
        }
        v = m.apply(v);
    }
}

/// Subspace in reduced echelon form: each stored row is zero at the other
/// rows' pivots.
template <class K>
class Span {
  public:
    explicit Span(std::size_t dim) : pivot_of_(dim, kNone) {}

    bool is_pivot(std::size_t k) const { return pivot_of_[k] != kNone; }

    std::vector<K> reduce(std::vector<K> w) const
    {
        for (const auto& [piv, row] : rows_) {
            if (w[piv].is_zero()) continue;
            const K f = w[piv];
            for (std::size_t k = 0; k < w.size(); ++k) {
                if (!row[k].is_zero()) w[k] = w[k] - f * row[k];
            }
        }
        return w;
    }

    /// Adds w; returns its reduction when it was new.
    std::optional<std::vector<K>> insert(std::vector<K> w)
    {
        w = reduce(std::move(w));
        std::size_t piv = 0;
        while (piv < w.size() && w[piv].is_zero()) ++piv;
        if (piv == w.size()) return std::nullopt;
        const K inv = w[piv].inverse();
        for (auto& x : w) x = x * inv;
        for (auto& [p, row] : rows_) {
            if (row[piv].is_zero()) continue;
            const K f = row[piv];
            for (std::size_t k = 0; k < w.size(); ++k) {
                if (!w[k].is_zero()) row[k] = row[k] - f * w[k];
            }
        }
        pivot_of_[piv] = rows_.size();
        rows_.emplace_back(piv, w);
        return w;
    }

  private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pivot_of_;
    std::vector<std::pair<std::size_t, std::vector<K>>> rows_;
};

struct ModRur {
    enum class Kind { Unit, Positive, Finite, Bad, NotSeparating } kind = Kind::Bad;
    int dimension = 0;
    std::size_t points = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> minpoly;
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> numerators;
};

/// With `record`, the basis computation's trace is stored there; with
/// `replay`, only the traced steps are computed.
template <class K>
ModRur rur_modulo_prime(const Ideal& ideal, const std::vector<GaussRat>& weights, gb::Trace* record = nullptr,
                        const gb::Trace* replay = nullptr)
{
    ModRur out;
    const std::size_t n = ideal.vars()->size();
    const gb::Order ord{TermOrder::GrevLex, n, 0};
    std::vector<gb::Poly<K>> in;
    for (const auto& g : ideal.generators()) {
        auto p = to_engine<K>(g);
        if (!p || p->t.size() != g.size()) return out;
        in.push_back(std::move(*p));
    }
    std::vector<K> w;
    for (const auto& c : weights) {
        auto k = to_field<K>(c);
        if (!k) return out;
        w.push_back(*k);
    }
    std::vector<gb::Poly<K>> basis;
    if (replay != nullptr) {
        auto r = gb::Engine<K>(ord).replay(std::move(in), *replay);
        if (!r) return out;
        basis = std::move(*r);
    } else {
        basis = gb::Engine<K>(ord).run(std::move(in), record);
    }
    if (basis.size() == 1 && basis.front().lm() == Monomial{}) {
        out.kind = ModRur::Kind::Unit;
        return out;
    }
    std::vector<Monomial> lms;
    for (const auto& g : basis) lms.push_back(g.lm());
    out.dimension = dimension_from_leading(lms, n);
    if (out.dimension > 0) {
        out.kind = ModRur::Kind::Positive;
        return out;
    }
    const ModQuotient<K> q = quotient(basis, ord, n);

    // The radical is I plus the squarefree parts of the univariate minimal
    // polynomials; their ideal in k[x]/I is closed under multiplication by
    // linear algebra and factored out.
    const std::size_t big = q.dim();
    Span<K> nil(big);
    std::vector<std::vector<K>> todo;
    std::vector<K> one(big);
    one[0] = K(1);
    for (std::size_t v = 0; v < n; ++v) {
        UPoly<K> mp = minpoly_of(q.mult[v], one).first;
        UPoly<K> sf = quo(mp, gcd(mp, derivative(mp)));
        if (sf.size() == mp.size()) continue;
        std::vector<K> acc(big);
        for (std::size_t k = sf.size(); k-- > 0;) {
            acc = q.mult[v].apply(acc);
            acc[0] = acc[0] + sf[k];
        }
        if (auto r = nil.insert(std::move(acc))) todo.push_back(std::move(*r));
    }
    while (!todo.empty()) {
        std::vector<K> w0 = std::move(todo.back());
        todo.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
            if (auto r = nil.insert(q.mult[v].apply(w0))) todo.push_back(std::move(*r));
        }
    }
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < big; ++k) {
        if (!nil.is_pivot(k)) keep.push_back(k);
    }
    const std::size_t d = keep.size();
    out.points = d;
    auto project = [&](std::vector<K> vec) {
        vec = nil.reduce(std::move(vec));
        std::vector<K> r(d);
        for (std::size_t k = 0; k < d; ++k) r[k] = vec[keep[k]];
        return r;
    };

    Mat<K> mu(d);
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<K> e(big);
        e[keep[c]] = K(1);
        std::vector<K> col(big);
        for (std::size_t v = 0; v < n; ++v) {
            if (w[v].is_zero()) continue;
            std::vector<K> mv = q.mult[v].apply(e);
            for (std::size_t k = 0; k < big; ++k) col[k] = col[k] + w[v] * mv[k];
        }
        col = project(std::move(col));
        for (std::size_t r = 0; r < d; ++r) mu.at(r, c) = col[r];
    }
    auto [mp, kr] = minpoly_of(mu, project(one));
    if (mp.size() != d + 1) {
        out.kind = ModRur::Kind::NotSeparating;
        return out;
    }
    // 1, t, ..., t^(d-1) span the reduced quotient; write each x_v in it.
    const UPoly<K> dq = derivative(mp);
    out.kind = ModRur::Kind::Finite;
    for (std::size_t k = 0; k + 1 < mp.size(); ++k) out.minpoly.push_back(residues<K>(mp[k]));
    for (std::size_t v = 0; v < n; ++v) {
        auto coords = kr.add(project(q.mult[v].apply(one)));
        if (!coords) throw AlgorithmError("coordinate outside the Krylov span");
        UPoly<K> h(coords->begin(), coords->end());
        trim(h);
        UPoly<K> g = rem(mul(h, dq), mp);
        g.resize(d);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> res;
        for (const auto& c : g) res.push_back(residues<K>(c));
        out.numerators.push_back(std::move(res));
    }
    return out;
}

/// Residues of all coefficients lifted together, for one (quotient size)
/// signature.
struct Lift {
    std::size_t points = 0;
    unsigned count = 0;
    Int modulus = 1;
    std::vector<std::pair<Int, Int>> values;
    std::size_t hard = 0;
};

std::vector<std::pair<std::uint64_t, std::uint64_t>> flatten(const ModRur& r)
{
    auto out = r.minpoly;
    for (const auto& g : r.numerators) out.insert(out.end(), g.begin(), g.end());
    return out;
}

/// Tries the coefficient that failed last time first, so that most calls
/// cost one reconstruction.
std::optional<std::vector<GaussRat>> reconstruct(Lift& l)
{
    auto lift_one = [&](std::size_t k) -> std::optional<GaussRat> {
        auto a = rational_reconstruction(l.values[k].first, l.modulus);
        if (!a) return std::nullopt;
        auto b = rational_reconstruction(l.values[k].second, l.modulus);
        if (!b) return std::nullopt;
        return GaussRat(*a, *b);
    };
    if (!lift_one(l.hard)) return std::nullopt;
    std::vector<GaussRat> out;
    for (std::size_t k = 0; k < l.values.size(); ++k) {
        auto c = lift_one(k);
        if (!c) {
            l.hard = k;
            return std::nullopt;
        }
        out.push_back(std::move(*c));
    }
    return out;
}

bool agrees(const std::vector<GaussRat>& lifted, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& res)
{
    if (lifted.size() != res.size()) return false;
    for (std::size_t k = 0; k < res.size(); ++k) {
        auto re = to_fp(lifted[k].re());
        auto im = to_fp(lifted[k].im());
        if (!re || !im || re->v != res[k].first || im->v != res[k].second) return false;
    }
    return true;
}

std::vector<GaussRat> weights_for(unsigned trial, std::size_t n)
{
    std::vector<GaussRat> w(n);
    if (trial < n) {
        w[trial] = GaussRat(1);
        return w;
    }
    const long k = static_cast<long>(trial - n) + 2;
    GaussRat c(1);
    for (std::size_t v = 0; v < n; ++v) {
        w[v] = c;
        c *= GaussRat(k);
    }
    return w;
}

template <class K>
UnivariateRepresentation lift(const Ideal& ideal)
{
    const std::size_t n = ideal.vars()->size();
    UnivariateRepresentation out;
    out.vars = ideal.vars();
    unsigned trial = 0;
    out.weights = weights_for(trial, n);
    std::vector<Lift> groups;
    std::optional<std::vector<GaussRat>> candidate;
    std::size_t lead = 0;
    std::map<int, unsigned> degenerate_votes;
    unsigned misses = 0;
    unsigned confirmations = 0;
    std::optional<gb::Trace> trace;
    std::uint64_t p = std::uint64_t{1} << 62U;
    for (int iter = 0; iter < 4000; ++iter) {
        p = next_prime(p);
        set_prime(p);
        // Replayed bases are only trusted after full runs confirm the lift.
        const bool confirming = candidate.has_value();
        ModRur r;
        if (trace && !confirming) {
            r = rur_modulo_prime<K>(ideal, out.weights, nullptr, &*trace);
            if (r.kind == ModRur::Kind::Bad) r = rur_modulo_prime<K>(ideal, out.weights);
        } else if (!trace) {
            gb::Trace fresh;
            r = rur_modulo_prime<K>(ideal, out.weights, &fresh);
            if (r.kind == ModRur::Kind::Finite) trace = std::move(fresh);
        } else {
            r = rur_modulo_prime<K>(ideal, out.weights);
        }
        if (r.kind == ModRur::Kind::Bad) continue;
        if (r.kind == ModRur::Kind::Unit || r.kind == ModRur::Kind::Positive) {
            const int dim = r.kind == ModRur::Kind::Unit ? -1 : r.dimension;
            if (++degenerate_votes[dim] >= 3) {
                out.dimension = dim;
                return out;
            }
            continue;
        }
        if (r.kind == ModRur::Kind::NotSeparating) {
            // A separating form fails only at finitely many primes.
            if (groups.empty() || ++misses >= 3) {
                out.weights = weights_for(++trial, n);
                groups.clear();
                candidate.reset();
                lead = 0;
                misses = 0;
            }
            continue;
        }
        const auto res = flatten(r);
        if (candidate && groups[lead].points == r.points && agrees(*candidate, res)) {
            if (++confirmations >= 2) {
                const std::size_t d = r.points;
                out.dimension = 0;
                out.minpoly.assign(candidate->begin(), candidate->begin() + static_cast<long>(d));
                out.minpoly.emplace_back(1);
                for (std::size_t v = 0; v < n; ++v) {
                    auto first = candidate->begin() + static_cast<long>(d * (v + 1));
                    out.numerators.emplace_back(first, first + static_cast<long>(d));
                }
                return out;
            }
            continue;
        }
        confirmations = 0;
        std::size_t gi = 0;
        while (gi < groups.size() && groups[gi].points != r.points) ++gi;
        if (gi == groups.size()) {
            groups.emplace_back();
            groups.back().points = r.points;
            groups.back().values.assign(res.size(), {Int(0), Int(0)});
        }
        Lift& l = groups[gi];
        for (std::size_t k = 0; k < res.size(); ++k) {
            l.values[k].first = crt(l.values[k].first, l.modulus, res[k].first, p);
            l.values[k].second = crt(l.values[k].second, l.modulus, res[k].second, p);
        }
        l.modulus *= static_cast<unsigned long>(p);
        ++l.count;
        for (std::size_t k = 0; k < groups.size(); ++k) {
            if (groups[k].count > groups[lead].count) lead = k;
        }
        candidate = reconstruct(groups[lead]);
    }
    throw AlgorithmError("univariate representation did not stabilize");
}

}  // namespace

UnivariateRepresentation univariate_representation(const Ideal& ideal)
{
    for (const auto& g : ideal.generators()) {
        if (g.is_constant()) {
            UnivariateRepresentation out;
            out.vars = ideal.vars();
            return out;
        }
    }
    if (ideal.vars()->size() > kMaxVars) throw DomainError("too many variables");
    if (ideal.is_zero()) {
        UnivariateRepresentation out;
        out.vars = ideal.vars();
        out.dimension = static_cast<int>(ideal.vars()->size());
        return out;
    }
    bool real = std::all_of(ideal.generators().begin(), ideal.generators().end(), [](const MPoly& g) { return g.is_real(); });
    return real ? lift<Fp>(ideal) : lift<Fp2>(ideal);
}

}  // namespace absconic
