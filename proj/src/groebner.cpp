#include "absconic/groebner.hpp"

#include "absconic/error.hpp"
#include "gb_engine.hpp"
#include "modular.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace absconic {

struct IdealAccess {
    static Ideal make_gb(Vars vars, std::vector<MPoly> gens, TermOrder order, std::size_t block)
    {
        Ideal r;
        r.vars_ = std::move(vars);
        r.gens_ = std::move(gens);
        r.order_ = order;
        r.block_ = block;
        r.is_gb_ = true;
        return r;
    }
};

Ideal::Ideal(Vars vars, std::vector<MPoly> generators, TermOrder order, std::size_t block)
    : vars_(std::move(vars)), order_(order), block_(block)
{
    if (!vars_) vars_ = make_vars(VarList{});
    if (order == TermOrder::Block && (block == 0 || block > vars_->size())) {
        throw DomainError("block order needs 0 < block <= number of variables");
    }
    for (auto& g : generators) {
        if (g.is_zero()) continue;
        gens_.push_back(g.in_ring(vars_).normalized());
    }
}

bool Ideal::is_unit() const { return gens_.size() == 1 && gens_.front().is_constant(); }

Ideal Ideal::with_order(TermOrder order, std::size_t block) const { return Ideal(vars_, gens_, order, block); }

namespace {

using namespace modp;

MPoly from_engine(const gb::Poly<GaussRat>& p, const Vars& vars)
{
    std::vector<MPoly::Term> terms;
    terms.reserve(p.t.size());
    for (const auto& t : p.t) terms.emplace_back(t.m, t.c);
    return MPoly::from_terms(vars, std::move(terms));
}

gb::Order engine_order(const Ideal& ideal)
{
    return {ideal.order(), ideal.vars()->size(), ideal.block()};
}

std::vector<MPoly> sorted_output(std::vector<MPoly> gens, const gb::Order& ord)
{
    std::sort(gens.begin(), gens.end(), [&](const MPoly& a, const MPoly& b) {
        Monomial la = leading_monomial(a, ord.kind, ord.block);
        Monomial lb = leading_monomial(b, ord.kind, ord.block);
        return ord.cmp(la, lb) < 0;
    });
    return gens;
}

// ---------------------------------------------------------------------------
// Modular computation with Chinese remaindering.

/// Reduced basis modulo one prime as (leading monomials, terms with
/// coefficient residues re/im).
struct ModBasis {
    std::vector<Monomial> lms;
    std::vector<std::vector<std::pair<Monomial, std::pair<std::uint64_t, std::uint64_t>>>> polys;
};

/// Reduced basis modulo the current prime. With `record`, the run's trace
/// is stored there; with `replay`, only the traced steps are computed.
template <class K>
std::optional<ModBasis> modular_basis(const Ideal& ideal, gb::Trace* record = nullptr, const gb::Trace* replay = nullptr)
{
    std::vector<gb::Poly<K>> in;
    for (const auto& g : ideal.generators()) {
        auto p = to_engine<K>(g);
        if (!p) return std::nullopt;
        // A vanishing leading coefficient changes the problem: skip the prime.
        if (p->t.size() != g.size()) return std::nullopt;
        in.push_back(std::move(*p));
    }
    gb::Engine<K> eng(engine_order(ideal));
    std::vector<gb::Poly<K>> out;
    if (replay != nullptr) {
        auto r = eng.replay(std::move(in), *replay);
        if (!r) return std::nullopt;
        out = std::move(*r);
    } else {
        out = eng.run(std::move(in), record);
    }
    ModBasis mb;
    for (const auto& p : out) {
        mb.lms.push_back(p.lm());
        std::vector<std::pair<Monomial, std::pair<std::uint64_t, std::uint64_t>>> terms;
        for (const auto& t : p.t) terms.emplace_back(t.m, residues<K>(t.c));
        mb.polys.push_back(std::move(terms));
    }
    return mb;
}

struct LiftGroup {
    std::vector<Monomial> lms;
    unsigned count = 0;
    Int modulus = 1;
    // Per basis element: monomial -> (re residue, im residue) modulo `modulus`.
    std::vector<std::map<Monomial, std::pair<Int, Int>, bool (*)(const Monomial&, const Monomial&)>> coeffs;
    // Coefficient whose reconstruction failed last.
    const std::pair<Int, Int>* hard = nullptr;
};

bool mono_less(const Monomial& a, const Monomial& b) { return lex_cmp(a, b) < 0; }

void absorb(LiftGroup& g, const ModBasis& mb, std::uint64_t p)
{
    if (g.count == 0) {
        g.lms = mb.lms;
        g.coeffs.assign(mb.polys.size(), decltype(g.coeffs)::value_type(mono_less));
    }
    for (std::size_t i = 0; i < mb.polys.size(); ++i) {
        auto& cm = g.coeffs[i];
        std::map<Monomial, std::pair<std::uint64_t, std::uint64_t>, bool (*)(const Monomial&, const Monomial&)> fresh(mono_less);
        for (const auto& [m, r] : mb.polys[i]) fresh.emplace(m, r);
        for (const auto& [m, r] : fresh) cm.try_emplace(m, Int(0), Int(0));
        for (auto& [m, r] : cm) {
            auto it = fresh.find(m);
            std::uint64_t yr = it == fresh.end() ? 0 : it->second.first;
            std::uint64_t yi = it == fresh.end() ? 0 : it->second.second;
            r.first = crt(r.first, g.modulus, yr, p);
            r.second = crt(r.second, g.modulus, yi, p);
        }
    }
    g.modulus *= static_cast<unsigned long>(p);
    ++g.count;
}

std::optional<std::vector<gb::Poly<GaussRat>>> reconstruct(LiftGroup& g, const gb::Order& ord)
{
    if (g.hard != nullptr && (!rational_reconstruction(g.hard->first, g.modulus) || !rational_reconstruction(g.hard->second, g.modulus))) {
        return std::nullopt;
    }
    std::vector<gb::Poly<GaussRat>> out;
    for (const auto& cm : g.coeffs) {
        gb::Poly<GaussRat> p;
        for (const auto& [m, r] : cm) {
            auto re = rational_reconstruction(r.first, g.modulus);
            auto im = re ? rational_reconstruction(r.second, g.modulus) : std::nullopt;
            if (!re || !im) {
                g.hard = &r;
                return std::nullopt;
            }
            GaussRat c(*re, *im);
            if (!c.is_zero()) p.t.push_back({m, c});
        }
        std::sort(p.t.begin(), p.t.end(), [&](const auto& a, const auto& b) { return ord.cmp(a.m, b.m) > 0; });
        out.push_back(std::move(p));
    }
    return out;
}

/// Checks a lifted basis against a basis computed modulo the current prime.
bool agrees(const std::vector<gb::Poly<GaussRat>>& lifted, const ModBasis& mb, bool complex)
{
    if (lifted.size() != mb.polys.size()) return false;
    for (std::size_t i = 0; i < lifted.size(); ++i) {
        std::map<Monomial, std::pair<std::uint64_t, std::uint64_t>, bool (*)(const Monomial&, const Monomial&)> expect(mono_less);
        for (const auto& t : lifted[i].t) {
            auto re = to_fp(t.c.re());
            auto im = to_fp(t.c.im());
            if (!re || !im) return false;
            if (!complex && !im->is_zero()) return false;
            if (re->is_zero() && im->is_zero()) continue;
            expect.emplace(t.m, std::make_pair(re->v, complex ? im->v : 0));
        }
        if (expect.size() != mb.polys[i].size()) return false;
        for (const auto& [m, r] : mb.polys[i]) {
            auto it = expect.find(m);
            if (it == expect.end() || it->second != r) return false;
        }
    }
    return true;
}

bool reduces_to_zero(const Ideal& ideal, const std::vector<gb::Poly<GaussRat>>& basis, const gb::Order& ord)
{
    gb::Engine<GaussRat> eng(ord);
    for (const auto& g : ideal.generators()) {
        auto p = to_engine<GaussRat>(g);
        p->t = eng.sorted(std::move(p->t));
        if (!gb::normal_form(std::move(*p), basis, ord).is_zero()) return false;
    }
    return true;
}

/// Bases modulo successive primes are grouped by leading monomials and
/// lifted. After the first prime only the basis-enlarging steps of its run
/// are replayed; a traced answer is accepted only after a full computation
/// modulo a fresh prime agrees with it, otherwise tracing is abandoned.
template <class K>
Ideal modular_groebner(const Ideal& ideal)
{
    const bool complex = std::is_same_v<K, Fp2>;
    const gb::Order ord = engine_order(ideal);
    std::vector<LiftGroup> groups;
    std::optional<std::vector<gb::Poly<GaussRat>>> candidate;
    std::size_t lead = 0;
    unsigned unit_votes = 0;
    bool tracing = true;
    std::optional<gb::Trace> trace;
    std::uint64_t p = std::uint64_t{1} << 62U;
    auto accept = [&](const std::vector<gb::Poly<GaussRat>>& basis) {
        std::vector<MPoly> gens;
        for (const auto& q : basis) gens.push_back(from_engine(q, ideal.vars()).normalized());
        return IdealAccess::make_gb(ideal.vars(), sorted_output(std::move(gens), ord), ideal.order(), ideal.block());
    };
    auto full_basis_at_next_prime = [&]() {
        std::optional<ModBasis> mb;
        while (!mb) {
            p = next_prime(p);
            set_prime(p);
            mb = modular_basis<K>(ideal);
        }
        return *mb;
    };
    for (int iter = 0; iter < 4000; ++iter) {
        p = next_prime(p);
        set_prime(p);
        std::optional<ModBasis> mb;
        if (tracing && trace) {
            mb = modular_basis<K>(ideal, nullptr, &*trace);
            if (!mb) mb = modular_basis<K>(ideal);
        } else if (tracing) {
            gb::Trace t;
            mb = modular_basis<K>(ideal, &t);
            if (mb) trace = std::move(t);
        } else {
            mb = modular_basis<K>(ideal);
        }
        if (!mb) continue;
        if (mb->lms.size() == 1 && mb->lms.front() == Monomial{}) {
            if (++unit_votes >= 3) return IdealAccess::make_gb(ideal.vars(), {MPoly::constant(ideal.vars(), GaussRat(1))}, ideal.order(), ideal.block());
            continue;
        }
        if (candidate && agrees(*candidate, *mb, complex) && reduces_to_zero(ideal, *candidate, ord)) {
            if (!tracing || agrees(*candidate, full_basis_at_next_prime(), complex)) return accept(*candidate);
            tracing = false;
            groups.clear();
            candidate.reset();
            lead = 0;
            continue;
        }
        std::size_t gi = 0;
        while (gi < groups.size() && groups[gi].lms != mb->lms) ++gi;
        if (gi == groups.size()) groups.emplace_back();
        absorb(groups[gi], *mb, p);
        for (std::size_t k = 0; k < groups.size(); ++k) {
            if (groups[k].count > groups[lead].count) lead = k;
        }
        candidate = reconstruct(groups[lead], ord);
    }
    throw AlgorithmError("Groebner basis lifting did not stabilize");
}

}  // namespace

Monomial leading_monomial(const MPoly& f, TermOrder order, std::size_t block)
{
    if (f.is_zero()) throw DomainError("leading monomial of the zero polynomial");
    gb::Order ord{order, f.nvars(), block};
    const Monomial* best = &f.terms().front().first;
    for (const auto& [m, c] : f.terms()) {
        if (ord.cmp(m, *best) > 0) best = &m;
    }
    return *best;
}

Ideal groebner(const Ideal& ideal)
{
    if (ideal.is_groebner()) return ideal;
    if (ideal.vars()->size() > kMaxVars) throw DomainError("too many variables");
    if (ideal.is_zero()) return IdealAccess::make_gb(ideal.vars(), {}, ideal.order(), ideal.block());
    for (const auto& g : ideal.generators()) {
        if (g.is_constant()) return IdealAccess::make_gb(ideal.vars(), {MPoly::constant(ideal.vars(), GaussRat(1))}, ideal.order(), ideal.block());
    }
    bool real = std::all_of(ideal.generators().begin(), ideal.generators().end(), [](const MPoly& g) { return g.is_real(); });
    return real ? modular_groebner<Fp>(ideal) : modular_groebner<Fp2>(ideal);
}

Ideal groebner_exact(const Ideal& ideal)
{
    if (ideal.is_zero()) return IdealAccess::make_gb(ideal.vars(), {}, ideal.order(), ideal.block());
    const gb::Order ord = engine_order(ideal);
    std::vector<gb::Poly<GaussRat>> in;
    for (const auto& g : ideal.generators()) in.push_back(*to_engine<GaussRat>(g));
    gb::Engine<GaussRat> eng(ord);
    auto out = eng.run(std::move(in));
    std::vector<MPoly> gens;
    for (const auto& q : out) gens.push_back(from_engine(q, ideal.vars()).normalized());
    return IdealAccess::make_gb(ideal.vars(), sorted_output(std::move(gens), ord), ideal.order(), ideal.block());
}

struct NormalForm::Impl {
    Vars vars;
    gb::Order ord;
    std::vector<gb::Poly<GaussRat>> basis;
};

NormalForm::NormalForm(const Ideal& gb) : impl_(std::make_unique<Impl>())
{
    if (!gb.is_groebner()) throw DomainError("normal form needs a Groebner basis");
    impl_->vars = gb.vars();
    impl_->ord = engine_order(gb);
    gb::Engine<GaussRat> eng(impl_->ord);
    for (const auto& g : gb.generators()) {
        auto p = *to_engine<GaussRat>(g);
        p.t = eng.sorted(std::move(p.t));
        gb::make_monic(p);
        impl_->basis.push_back(std::move(p));
    }
}

NormalForm::~NormalForm() = default;
NormalForm::NormalForm(NormalForm&&) noexcept = default;
NormalForm& NormalForm::operator=(NormalForm&&) noexcept = default;

MPoly NormalForm::operator()(const MPoly& f) const
{
    gb::Engine<GaussRat> eng(impl_->ord);
    auto p = *to_engine<GaussRat>(f.in_ring(impl_->vars));
    p.t = eng.sorted(std::move(p.t));
    return from_engine(gb::normal_form(std::move(p), impl_->basis, impl_->ord), impl_->vars);
}

MPoly normal_form(const MPoly& f, const Ideal& gb) { return NormalForm(gb)(f); }

bool contains(const Ideal& gb, const MPoly& f) { return normal_form(f, gb).is_zero(); }

int dimension(const Ideal& ideal)
{
    Ideal g = groebner(ideal);
    if (g.is_unit()) return -1;
    std::vector<Monomial> lms;
    for (const auto& p : g.generators()) lms.push_back(leading_monomial(p, g.order(), g.block()));
    return modp::dimension_from_leading(lms, g.vars()->size());
}

Ideal eliminate(const Ideal& ideal, std::span<const std::string> drop)
{
    const VarList& names = *ideal.vars();
    for (const auto& d : drop) {
        if (std::find(names.begin(), names.end(), d) == names.end()) throw DomainError("cannot eliminate unknown variable " + d);
    }
    VarList kept_names;
    for (const auto& n : names) {
        if (std::find(drop.begin(), drop.end(), n) == drop.end()) kept_names.push_back(n);
    }
    Vars kept = make_vars(kept_names);
    if (drop.empty()) return groebner(Ideal(kept, ideal.generators(), TermOrder::GrevLex));
    VarList ordered(drop.begin(), drop.end());
    ordered.insert(ordered.end(), kept_names.begin(), kept_names.end());
    Vars perm = make_vars(ordered);
    std::vector<MPoly> gens;
    for (const auto& g : ideal.generators()) gens.push_back(g.in_ring(perm));
    Ideal big = groebner(Ideal(perm, std::move(gens), TermOrder::Block, drop.size()));
    std::vector<MPoly> out;
    for (const auto& g : big.generators()) {
        auto sup = g.support();
        if (std::all_of(sup.begin(), sup.end(), [&](std::size_t v) { return v >= drop.size(); })) out.push_back(g.in_ring(kept).normalized());
    }
    gb::Order ord{TermOrder::GrevLex, kept->size(), 0};
    return IdealAccess::make_gb(kept, sorted_output(std::move(out), ord), TermOrder::GrevLex, 0);
}

Ideal saturate(const Ideal& ideal, const MPoly& h)
{
    if (h.is_zero()) throw DomainError("saturation by the zero polynomial");
    std::string t = "T";
    while (std::find(ideal.vars()->begin(), ideal.vars()->end(), t) != ideal.vars()->end()) t += "_";
    VarList names{t};
    names.insert(names.end(), ideal.vars()->begin(), ideal.vars()->end());
    Vars ring = make_vars(names);
    std::vector<MPoly> gens;
    for (const auto& g : ideal.generators()) gens.push_back(g.in_ring(ring));
    gens.push_back(MPoly::constant(ring, GaussRat(1)) - MPoly::variable(ring, 0) * h.in_ring(ring));
    std::string drop[] = {t};
    Ideal sat = eliminate(Ideal(ring, std::move(gens)), drop);
    return IdealAccess::make_gb(ideal.vars(), [&] {
        std::vector<MPoly> g;
        for (const auto& p : sat.generators()) g.push_back(p.in_ring(ideal.vars()));
        return g;
    }(), TermOrder::GrevLex, 0);
}

Ideal operator+(const Ideal& a, const Ideal& b)
{
    Vars ring = merge_vars(a.vars(), b.vars());
    std::vector<MPoly> gens;
    for (const auto& g : a.generators()) gens.push_back(g.in_ring(ring));
    for (const auto& g : b.generators()) gens.push_back(g.in_ring(ring));
    return Ideal(ring, std::move(gens), a.order(), a.block());
}

}  // namespace absconic
