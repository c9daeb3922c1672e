#pragma once

// Buchberger engine over an arbitrary coefficient field K. K must provide
// is_zero(), is_one(), inverse(), construction from long, unary minus and
// the ring operators. Basis elements are kept monic with terms in
// descending order for the active term order.

#include "absconic/groebner.hpp"
#include "absconic/monomial.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

namespace absconic::gb {

struct Order {
    TermOrder kind = TermOrder::GrevLex;
    std::size_t nvars = 0;
    std::size_t block = 0;

    int cmp(const Monomial& a, const Monomial& b) const
    {
        switch (kind) {
        case TermOrder::Lex:
            for (std::size_t k = 0; k < nvars; ++k) {
                if (a.e[k] != b.e[k]) return a.e[k] < b.e[k] ? -1 : 1;
            }
            return 0;
        case TermOrder::GrevLex:
            return grevlex_cmp(a, b, 0, nvars);
        case TermOrder::Block: {
            int c = grevlex_cmp(a, b, 0, block);
            return c != 0 ? c : grevlex_cmp(a, b, block, nvars);
        }
        }
        return 0;
    }
};

inline std::uint32_t divmask(const Monomial& m)
{
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < kMaxVars; ++k) {
        if (m.e[k] != 0) mask |= 1U << k;
    }
    return mask;
}

/// Two bits per variable (exponent >= 1, exponent >= 2); a divisor's
/// reduction mask is a subset of its multiple's.
inline std::uint32_t reduction_mask(const Monomial& m)
{
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < kMaxVars; ++k) {
        if (m.e[k] != 0) mask |= 1U << (2 * k);
        if (m.e[k] > 1) mask |= 2U << (2 * k);
    }
    return mask;
}

template <class K>
struct Term {
    Monomial m;
    K c;
};

template <class K>
struct Poly {
    std::vector<Term<K>> t;
    unsigned sugar = 0;

    bool is_zero() const { return t.empty(); }
    const Monomial& lm() const { return t.front().m; }
};

template <class K>
void make_monic(Poly<K>& f)
{
    if (f.t.empty() || f.t.front().c.is_one()) return;
    K inv = f.t.front().c.inverse();
    for (auto& term : f.t) term.c = term.c * inv;
}

/// f[pos..] -= c * m * g, where c*m*lt(g) cancels f[pos]. Terms before pos
/// are untouched.
template <class K>
void sub_mul(Poly<K>& f, std::size_t pos, const K& c, const Monomial& m, const Poly<K>& g, const Order& ord)
{
    std::vector<Term<K>> out;
    out.reserve(f.t.size() + g.t.size());
    for (std::size_t k = 0; k < pos; ++k) out.push_back(std::move(f.t[k]));
    std::size_t i = pos + 1;
    std::size_t j = 1;
    while (i < f.t.size() || j < g.t.size()) {
        if (j == g.t.size()) {
            out.push_back(std::move(f.t[i++]));
            continue;
        }
        Monomial gm = g.t[j].m * m;
        int cmp = i == f.t.size() ? -1 : ord.cmp(f.t[i].m, gm);
        if (cmp > 0) {
            out.push_back(std::move(f.t[i++]));
        } else if (cmp < 0) {
            out.push_back({gm, -(c * g.t[j].c)});
            ++j;
        } else {
            K v = f.t[i].c - c * g.t[j].c;
            if (!v.is_zero()) out.push_back({gm, std::move(v)});
            ++i;
            ++j;
        }
    }
    f.t = std::move(out);
}

struct PackedHash {
    std::size_t operator()(const Monomial& m) const noexcept
    {
        std::uint64_t w[4];
        std::memcpy(w, m.e.data(), sizeof w);
        std::uint64_t h = (w[0] ^ (w[1] * 0x9E3779B97F4A7C15ULL)) + (w[2] ^ (w[3] * 0xC2B2AE3D27D4EB4FULL));
        h ^= h >> 29;
        h *= 0xBF58476D1CE4E5B9ULL;
        return static_cast<std::size_t>(h ^ (h >> 32));
    }
};

/// Full reduction of f. `reducer(m)` returns a basis element whose leading
/// monomial divides m, or nullptr. Pending terms live in a hash map keyed by
/// monomial with a max-heap of the keys, so every step costs only the length
/// of the reducer.
template <class K, class Finder>
void reduce_by(Poly<K>& f, const Order& ord, Finder reducer)
{
    if (f.t.empty()) return;
    std::unordered_map<Monomial, K, PackedHash> pending;
    pending.reserve(4 * f.t.size());
    auto less = [&](const Monomial& a, const Monomial& b) { return ord.cmp(a, b) < 0; };
    std::priority_queue<Monomial, std::vector<Monomial>, decltype(less)> heap(less);
    for (auto& term : f.t) {
        pending.emplace(term.m, std::move(term.c));
        heap.push(term.m);
    }
    std::vector<Term<K>> out;
    while (!heap.empty()) {
        const Monomial m = heap.top();
        heap.pop();
        auto it = pending.find(m);
        K c = std::move(it->second);
        pending.erase(it);
        if (c.is_zero()) continue;
        const Poly<K>* g = reducer(m);
        if (g == nullptr) {
            out.push_back({m, std::move(c)});
            continue;
        }
        const Monomial q = m / g->lm();
        f.sugar = std::max(f.sugar, g->sugar + q.degree());
        // Terms produced here are below m, which has left the map for good.
        for (std::size_t j = 1; j < g->t.size(); ++j) {
            const Monomial mm = g->t[j].m * q;
            auto [jt, fresh] = pending.try_emplace(mm, K(0));
            jt->second = jt->second - c * g->t[j].c;
            if (fresh) heap.push(mm);
        }
    }
    f.t = std::move(out);
}

/// Steps of a Buchberger run that produced new basis elements: an input
/// (i == kInput, j its position after sorting) or the S-pair (i, j), with
/// the leading monomial obtained.
struct Trace {
    static constexpr std::size_t kInput = static_cast<std::size_t>(-1);
    struct Step {
        std::size_t i;
        std::size_t j;
        Monomial lm;
    };
    std::vector<Step> steps;
};

template <class K>
class Engine {
  public:
    explicit Engine(Order ord) : ord_(ord) {}

    const Order& order() const { return ord_; }

    std::vector<Term<K>> sorted(std::vector<Term<K>> terms) const
    {
        std::sort(terms.begin(), terms.end(), [&](const Term<K>& a, const Term<K>& b) { return ord_.cmp(a.m, b.m) > 0; });
        return terms;
    }

    /// Index of an active basis element whose leading monomial divides m.
    std::optional<std::size_t> find_reducer(const Monomial& m) const
    {
        std::uint32_t mask = reduction_mask(m);
        for (std::size_t k : active_) {
            if ((masks_[k] & ~mask) != 0) continue;
            if (polys_[k].lm().divides(m)) return k;
        }
        return std::nullopt;
    }

    /// Full reduction of f modulo the active basis.
    void reduce(Poly<K>& f) const
    {
        reduce_by(f, ord_, [&](const Monomial& m) -> const Poly<K>* {
            auto r = find_reducer(m);
            return r ? &polys_[*r] : nullptr;
        });
    }

    /// Runs Buchberger's algorithm with the Gebauer-Moeller criteria and
    /// the sugar selection strategy. Returns the reduced basis sorted by
    /// increasing leading monomial. When `trace` is given, records the
    /// steps that enlarged the basis.
    std::vector<Poly<K>> run(std::vector<Poly<K>> input, Trace* trace = nullptr)
    {
        prepare(input);
        for (std::size_t k = 0; k < input.size(); ++k) {
            Poly<K>& f = input[k];
            if (f.is_zero()) continue;
            reduce(f);
            if (f.is_zero()) continue;
            make_monic(f);
            if (trace != nullptr) trace->steps.push_back({Trace::kInput, k, f.lm()});
            if (insert(std::move(f))) return unit();
        }
        while (!pairs_.empty()) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < pairs_.size(); ++k) {
                const Pair& a = pairs_[k];
                const Pair& b = pairs_[best];
                if (a.sugar < b.sugar || (a.sugar == b.sugar && ord_.cmp(a.lcm, b.lcm) < 0)) best = k;
            }
            Pair p = pairs_[best];
            pairs_[best] = pairs_.back();
            pairs_.pop_back();
            Poly<K> s = spoly(p);
            reduce(s);
            if (s.is_zero()) continue;
            make_monic(s);
            if (trace != nullptr) trace->steps.push_back({p.i, p.j, s.lm()});
            if (insert(std::move(s))) return unit();
        }
        return reduced_basis();
    }

    /// Repeats a recorded run, computing only the steps that enlarged the
    /// basis. Returns nullopt when a step does not reproduce its recorded
    /// leading monomial. The result is a Groebner basis only if the skipped
    /// pairs also reduce to zero here, so callers must confirm it.
    std::optional<std::vector<Poly<K>>> replay(std::vector<Poly<K>> input, const Trace& trace)
    {
        prepare(input);
        for (const auto& step : trace.steps) {
            Poly<K> f;
            if (step.i == Trace::kInput) {
                if (step.j >= input.size()) return std::nullopt;
                f = std::move(input[step.j]);
            } else {
                if (step.j >= polys_.size()) return std::nullopt;
                const Monomial l = lcm(polys_[step.i].lm(), polys_[step.j].lm());
                f = spoly({step.i, step.j, l, pair_sugar(step.i, step.j, l)});
            }
            reduce(f);
            if (f.is_zero() || !(f.lm() == step.lm)) return std::nullopt;
            make_monic(f);
            const std::size_t hi = polys_.size();
            polys_.push_back(std::move(f));
            masks_.push_back(reduction_mask(polys_[hi].lm()));
            std::vector<std::size_t> next;
            for (std::size_t g : active_) {
                if (!polys_[hi].lm().divides(polys_[g].lm())) next.push_back(g);
            }
            next.push_back(hi);
            active_ = std::move(next);
        }
        return reduced_basis();
    }

  private:
    void prepare(std::vector<Poly<K>>& input) const
    {
        for (auto& f : input) f.t = sorted(std::move(f.t));
        std::stable_sort(input.begin(), input.end(), [&](const Poly<K>& a, const Poly<K>& b) {
            if (a.is_zero() || b.is_zero()) return !a.is_zero() && b.is_zero();
            return ord_.cmp(a.lm(), b.lm()) < 0;
        });
    }

    struct Pair {
        std::size_t i;
        std::size_t j;
        Monomial lcm;
        unsigned sugar;
    };

    std::vector<Poly<K>> unit() const
    {
        Poly<K> one;
        one.t.push_back({Monomial{}, K(1)});
        return {one};
    }

    Poly<K> spoly(const Pair& p) const
    {
        const Poly<K>& f = polys_[p.i];
        const Poly<K>& g = polys_[p.j];
        Monomial mf = p.lcm / f.lm();
        Monomial mg = p.lcm / g.lm();
        Poly<K> s;
        s.sugar = p.sugar;
        s.t.reserve(f.t.size());
        for (const auto& term : f.t) s.t.push_back({term.m * mf, term.c});
        // The leading terms cancel; sub_mul at position 0 drops them.
        sub_mul(s, 0, K(1), mg, g, ord_);
        return s;
    }

    unsigned pair_sugar(std::size_t i, std::size_t j, const Monomial& l) const
    {
        return std::max(polys_[i].sugar + (l / polys_[i].lm()).degree(), polys_[j].sugar + (l / polys_[j].lm()).degree());
    }

    /// Adds h to the basis and updates the pair list. Returns true when h
    /// is a nonzero constant.
    bool insert(Poly<K> h)
    {
        if (h.lm() == Monomial{}) return true;
        const std::size_t hi = polys_.size();
        polys_.push_back(std::move(h));
        masks_.push_back(reduction_mask(polys_[hi].lm()));
        const Monomial& lh = polys_[hi].lm();

        struct Cand {
            std::size_t g;
            Monomial lcm;
            bool coprime;
            bool keep;
        };
        std::vector<Cand> c;
        for (std::size_t g : active_) {
            c.push_back({g, lcm(lh, polys_[g].lm()), coprime(lh, polys_[g].lm()), true});
        }
        // Chain criterion among the new pairs: drop (h,g1) when another new
        // pair has a strictly smaller lcm dividing it, or an equal lcm and
        // an earlier position (one representative per lcm class).
        for (std::size_t a = 0; a < c.size(); ++a) {
            for (std::size_t b = 0; b < c.size(); ++b) {
                if (a == b || !c[b].keep) continue;
                if (!c[b].lcm.divides(c[a].lcm)) continue;
                if (c[b].lcm == c[a].lcm) {
                    // Prefer keeping a coprime representative, then the earlier one.
                    if (c[a].coprime && !c[b].coprime) continue;
                    if (c[a].coprime == c[b].coprime && b > a) continue;
                }
                c[a].keep = false;
                break;
            }
        }
        // Old pairs whose lcm is divisible by lt(h) with distinct lcms.
        std::vector<Pair> kept;
        kept.reserve(pairs_.size());
        for (const Pair& p : pairs_) {
            if (lh.divides(p.lcm) && lcm(polys_[p.i].lm(), lh) != p.lcm && lcm(polys_[p.j].lm(), lh) != p.lcm) continue;
            kept.push_back(p);
        }
        pairs_ = std::move(kept);
        for (const Cand& x : c) {
            if (!x.keep || x.coprime) continue;
            pairs_.push_back({x.g, hi, x.lcm, pair_sugar(x.g, hi, x.lcm)});
        }
        std::vector<std::size_t> next;
        for (std::size_t g : active_) {
            if (!lh.divides(polys_[g].lm())) next.push_back(g);
        }
        next.push_back(hi);
        active_ = std::move(next);
        return false;
    }

    std::vector<Poly<K>> reduced_basis()
    {
        // Elements are already minimal; interreduce tails from the
        // smallest leading monomial upwards.
        std::sort(active_.begin(), active_.end(), [&](std::size_t a, std::size_t b) { return ord_.cmp(polys_[a].lm(), polys_[b].lm()) < 0; });
        std::vector<Poly<K>> out;
        std::vector<std::size_t> all = active_;
        for (std::size_t idx = 0; idx < all.size(); ++idx) {
            Poly<K> f = polys_[all[idx]];
            active_.clear();
            for (std::size_t k = 0; k < all.size(); ++k) {
                if (k != idx) active_.push_back(all[k]);
            }
            // Only the tail needs reduction; the leading term is irreducible.
            Poly<K> tail;
            tail.t.assign(f.t.begin() + 1, f.t.end());
            reduce(tail);
            f.t.resize(1);
            f.t.insert(f.t.end(), tail.t.begin(), tail.t.end());
            polys_[all[idx]] = f;
            out.push_back(std::move(f));
        }
        active_ = all;
        return out;
    }

    Order ord_;
    std::vector<Poly<K>> polys_;
    std::vector<std::uint32_t> masks_;
    std::vector<std::size_t> active_;
    std::vector<Pair> pairs_;
};

/// Normal form of f modulo a reduced basis (monic, any order).
template <class K>
Poly<K> normal_form(Poly<K> f, const std::vector<Poly<K>>& basis, const Order& ord)
{
    std::vector<std::uint32_t> masks;
    for (const auto& g : basis) masks.push_back(reduction_mask(g.lm()));
    reduce_by(f, ord, [&](const Monomial& m) -> const Poly<K>* {
        const std::uint32_t mask = reduction_mask(m);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if ((masks[k] & ~mask) == 0 && basis[k].lm().divides(m)) return &basis[k];
        }
        return nullptr;
    });
    return f;
}

}  // namespace absconic::gb
