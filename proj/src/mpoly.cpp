#include "absconic/mpoly.hpp"

#include "absconic/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace absconic {

namespace {

bool lex_greater(const MPoly::Term& a, const MPoly::Term& b) { return lex_cmp(a.first, b.first) > 0; }

void sort_and_combine(std::vector<MPoly::Term>& terms)
{
    std::sort(terms.begin(), terms.end(), lex_greater);
    std::size_t out = 0;
    for (std::size_t k = 0; k < terms.size();) {
        Monomial m = terms[k].first;
        GaussRat c = std::move(terms[k].second);
        std::size_t j = k + 1;
        for (; j < terms.size() && terms[j].first == m; ++j) c += terms[j].second;
        if (!c.is_zero()) terms[out++] = {m, std::move(c)};
        k = j;
    }
    terms.resize(out);
}

}  // namespace

Vars make_vars(VarList names)
{
    if (names.size() > kMaxVars) {
        throw DomainError("at most " + std::to_string(kMaxVars) + " variables are supported");
    }
    for (std::size_t a = 0; a < names.size(); ++a) {
        for (std::size_t b = a + 1; b < names.size(); ++b) {
            if (names[a] == names[b]) throw DomainError("duplicate variable name '" + names[a] + "'");
        }
    }
    return std::make_shared<const VarList>(std::move(names));
}

Vars make_vars(std::initializer_list<std::string> names) { return make_vars(VarList(names)); }

bool same_vars(const Vars& a, const Vars& b)
{
    if (a == b) return true;
    if (!a || !b) return (!a || a->empty()) && (!b || b->empty());
    return *a == *b;
}

Vars merge_vars(const Vars& a, const Vars& b)
{
    VarList names = a ? *a : VarList{};
    if (b) {
        for (const auto& n : *b) {
            if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
        }
    }
    if (a && names.size() == a->size()) return a;
    return make_vars(std::move(names));
}

MPoly::MPoly(Vars vars) : vars_(std::move(vars)) {}

MPoly MPoly::constant(Vars vars, GaussRat c)
{
    MPoly p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace_back(Monomial{}, std::move(c));
    return p;
}

MPoly MPoly::variable(Vars vars, std::size_t index)
{
    if (index >= vars->size()) throw DomainError("variable index out of range");
    Monomial m;
    m.e[index] = 1;
    return monomial(std::move(vars), m);
}

MPoly MPoly::variable(Vars vars, std::string_view name)
{
    MPoly tmp(vars);
    return variable(std::move(vars), tmp.index_of(name));
}

MPoly MPoly::monomial(Vars vars, const Monomial& m, GaussRat c)
{
    MPoly p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace_back(m, std::move(c));
    return p;
}

MPoly MPoly::from_terms(Vars vars, std::vector<Term> terms)
{
    MPoly p(std::move(vars));
    sort_and_combine(terms);
    p.terms_ = std::move(terms);
    return p;
}

std::size_t MPoly::index_of(std::string_view name) const
{
    if (vars_) {
        for (std::size_t k = 0; k < vars_->size(); ++k) {
            if ((*vars_)[k] == name) return k;
        }
    }
    throw DomainError("unknown variable '" + std::string(name) + "'");
}

bool MPoly::has_var(std::string_view name) const
{
    return vars_ && std::find(vars_->begin(), vars_->end(), name) != vars_->end();
}

bool MPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first == Monomial{});
}

bool MPoly::is_real() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_real(); });
}

GaussRat MPoly::constant_term() const
{
    if (!terms_.empty() && terms_.back().first == Monomial{}) return terms_.back().second;
    return GaussRat(0);
}

int MPoly::total_degree() const
{
    int d = terms_.empty() ? -1 : 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first.degree()));
    return d;
}

int MPoly::degree(std::size_t var) const
{
    int d = terms_.empty() ? -1 : 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first.e[var]));
    return d;
}

bool MPoly::is_homogeneous() const
{
    if (terms_.empty()) return true;
    unsigned d = terms_.front().first.degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.first.degree() == d; });
}

std::vector<std::size_t> MPoly::support() const
{
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < nvars(); ++v) {
        if (degree(v) > 0) out.push_back(v);
    }
    return out;
}

void MPoly::check_ring(const MPoly& o) const
{
    if (!same_vars(vars_, o.vars_)) throw DomainError("polynomials live in different rings");
}

void MPoly::add_scaled(const MPoly& o, const GaussRat& c)
{
    check_ring(o);
    if (!vars_) vars_ = o.vars_;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        int cmp = a == terms_.end() ? -1 : (b == o.terms_.end() ? 1 : lex_cmp(a->first, b->first));
        if (cmp > 0) {
            out.push_back(std::move(*a++));
        } else if (cmp < 0) {
            out.emplace_back(b->first, b->second * c);
            ++b;
        } else {
            GaussRat s = std::move(a->second);
            s += b->second * c;
            if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
}

MPoly& MPoly::operator+=(const MPoly& o)
{
    add_scaled(o, GaussRat(1));
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o)
{
    add_scaled(o, GaussRat(-1));
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b)
{
    a.check_ring(b);
    MPoly r(a.vars_ ? a.vars_ : b.vars_);
    if (a.is_zero() || b.is_zero()) return r;
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].first, b.terms_[0].second);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].first, a.terms_[0].second);
    std::unordered_map<Monomial, GaussRat, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            auto [it, fresh] = acc.try_emplace(ma * mb);
            if (fresh) {
                it->second = ca * cb;
            } else {
                it->second += ca * cb;
            }
        }
    }
    std::vector<MPoly::Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc) {
        if (!c.is_zero()) terms.emplace_back(m, std::move(c));
    }
    std::sort(terms.begin(), terms.end(), lex_greater);
    r.terms_ = std::move(terms);
    return r;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const GaussRat& c)
{
    if (c.is_zero()) {
        terms_.clear();
    } else if (!c.is_one()) {
        for (auto& t : terms_) t.second *= c;
    }
    return *this;
}

MPoly MPoly::operator-() const
{
    MPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

bool operator==(const MPoly& a, const MPoly& b)
{
    if (a.terms_.size() != b.terms_.size()) return false;
    if (!a.terms_.empty() && !same_vars(a.vars_, b.vars_)) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
        if (!(a.terms_[k].first == b.terms_[k].first) || !(a.terms_[k].second == b.terms_[k].second)) {
            return false;
        }
    }
    return true;
}

MPoly MPoly::mul_term(const Monomial& m, const GaussRat& c) const
{
    MPoly r(vars_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first * m, t.second * c);
    return r;
}

MPoly MPoly::pow(unsigned e) const
{
    MPoly result = constant(vars_, GaussRat(1));
    MPoly base = *this;
    while (e != 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e != 0) base = base * base;
    }
    return result;
}

MPoly MPoly::derivative(std::size_t var) const
{
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
        if (m.e[var] == 0) continue;
        Monomial d = m;
        --d.e[var];
        out.emplace_back(d, c * GaussRat(static_cast<long>(m.e[var])));
    }
    MPoly r(vars_);
    r.terms_ = std::move(out);  // order is preserved by lowering one exponent uniformly
    std::sort(r.terms_.begin(), r.terms_.end(), lex_greater);
    return r;
}

MPoly MPoly::substitute(std::size_t var, const MPoly& value) const
{
    check_ring(value);
    auto coeffs = coefficients_in(var);
    // Horner in `value`.
    MPoly acc(vars_);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = acc * value + coeffs[k];
    }
    return acc;
}

MPoly MPoly::substitute_all(std::span<const MPoly> values) const
{
    if (values.size() != nvars()) throw DomainError("substitute_all: wrong number of values");
    Vars target = values.empty() ? vars_ : values.front().vars();
    std::vector<std::vector<MPoly>> powers(values.size());
    auto power = [&](std::size_t v, unsigned e) -> const MPoly& {
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(MPoly::constant(target, GaussRat(1)));
        while (cache.size() <= e) cache.push_back(cache.back() * values[v]);
        return cache[e];
    };
    std::unordered_map<Monomial, GaussRat, MonomialHash> acc;
    for (const auto& [m, c] : terms_) {
        MPoly prod = MPoly::constant(target, c);
        for (std::size_t v = 0; v < values.size(); ++v) {
            if (m.e[v] != 0) prod = prod * power(v, m.e[v]);
        }
        for (auto& [pm, pc] : prod.terms_) {
            auto [it, fresh] = acc.try_emplace(pm);
            if (fresh) {
                it->second = std::move(pc);
            } else {
                it->second += pc;
            }
        }
    }
    std::vector<Term> terms;
    for (auto& [m, c] : acc) {
        if (!c.is_zero()) terms.emplace_back(m, std::move(c));
    }
    MPoly r(target);
    std::sort(terms.begin(), terms.end(), lex_greater);
    r.terms_ = std::move(terms);
    return r;
}

GaussRat MPoly::evaluate(std::span<const GaussRat> point) const
{
    if (point.size() != nvars()) throw DomainError("evaluate: wrong number of coordinates");
    std::vector<std::vector<GaussRat>> powers(point.size());
    GaussRat sum(0);
    for (const auto& [m, c] : terms_) {
        GaussRat t = c;
        for (std::size_t v = 0; v < point.size(); ++v) {
            if (m.e[v] == 0) continue;
            auto& cache = powers[v];
            if (cache.empty()) cache.emplace_back(1);
            while (cache.size() <= m.e[v]) cache.push_back(cache.back() * point[v]);
            t *= cache[m.e[v]];
        }
        sum += t;
    }
    return sum;
}

std::vector<MPoly> MPoly::coefficients_in(std::size_t var) const
{
    int d = degree(var);
    std::vector<std::vector<Term>> buckets(d < 0 ? 0 : static_cast<std::size_t>(d) + 1);
    for (const auto& [m, c] : terms_) {
        Monomial r = m;
        unsigned k = r.e[var];
        r.e[var] = 0;
        buckets[k].emplace_back(r, c);
    }
    std::vector<MPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
        MPoly p(vars_);
        p.terms_ = std::move(b);  // removing one exponent keeps lex order within a bucket
        out.push_back(std::move(p));
    }
    return out;
}

MPoly MPoly::from_coefficients(const std::vector<MPoly>& coeffs, std::size_t var)
{
    if (coeffs.empty()) return {};
    MPoly acc(coeffs.front().vars());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        Monomial m;
        m.e[var] = static_cast<std::uint16_t>(k);
        acc += coeffs[k].mul_term(m, GaussRat(1));
    }
    return acc;
}

MPoly MPoly::conj() const
{
    MPoly r = *this;
    for (auto& t : r.terms_) t.second = t.second.conj();
    return r;
}

MPoly MPoly::normalized() const
{
    if (terms_.empty()) return *this;
    MPoly r = *this;
    GaussRat inv = terms_.front().second.inverse();
    r *= inv;
    Int den = 1;
    for (const auto& t : r.terms_) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.re().get_den_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.im().get_den_mpz_t());
    }
    Int num = 0;
    for (const auto& t : r.terms_) {
        Rat a = t.second.re() * den;
        Rat b = t.second.im() * den;
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), a.get_num_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), b.get_num_mpz_t());
    }
    Rat scale(den, num);
    scale.canonicalize();
    r *= GaussRat(scale);
    return r;
}

MPoly MPoly::in_ring(const Vars& target) const
{
    if (same_vars(vars_, target)) {
        MPoly r = *this;
        r.vars_ = target;
        return r;
    }
    std::vector<std::size_t> map(nvars());
    for (std::size_t v = 0; v < nvars(); ++v) {
        auto it = std::find(target->begin(), target->end(), (*vars_)[v]);
        map[v] = it == target->end() ? kMaxVars : static_cast<std::size_t>(it - target->begin());
    }
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        Monomial n;
        for (std::size_t v = 0; v < nvars(); ++v) {
            if (m.e[v] == 0) continue;
            if (map[v] == kMaxVars) {
                throw DomainError("variable '" + (*vars_)[v] + "' is missing from the target ring");
            }
            n.e[map[v]] = m.e[v];
        }
        terms.emplace_back(n, c);
    }
    return from_terms(target, std::move(terms));
}

std::string MPoly::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string coef = absconic::to_string(c);
        bool complex = !c.is_real() && sgn(c.re()) != 0;
        bool negative = !complex && (c.is_real() ? sgn(c.re()) < 0 : sgn(c.im()) < 0);
        if (complex) coef = "(" + coef + ")";
        if (negative) coef = coef.substr(1);
        os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
        first = false;
        bool unit = coef == "1";
        bool constant = m == Monomial{};
        if (!unit || constant) os << coef;
        bool need_star = !unit || constant;
        for (std::size_t v = 0; v < nvars(); ++v) {
            if (m.e[v] == 0) continue;
            if (need_star) os << '*';
            os << (*vars_)[v];
            if (m.e[v] > 1) os << '^' << m.e[v];
            need_star = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.to_string(); }

bool proportional(const MPoly& a, const MPoly& b)
{
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.normalized() == b.normalized().in_ring(a.vars());
}

namespace {

class PolyParser {
  public:
    PolyParser(std::string_view text, const Vars& vars) : s_(text), vars_(vars) {}

    MPoly parse()
    {
        MPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MPoly expr()
    {
        MPoly acc = term();
        for (;;) {
            if (eat('+')) {
                acc += term();
            } else if (eat('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MPoly term()
    {
        MPoly acc = factor();
        for (;;) {
            if (eat('*')) {
                acc = acc * factor();
            } else if (eat('/')) {
                MPoly d = factor();
                if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
                acc *= d.constant_term().inverse();
            } else {
                return acc;
            }
        }
    }

    MPoly factor()
    {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        MPoly base = primary();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        }
        return base;
    }

    MPoly primary()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MPoly e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
                fail("decimal numbers are rejected; use exact fractions p/q");
            }
            return MPoly::constant(vars_, GaussRat(Rat(Int(std::string(s_.substr(start, pos_ - start)), 10))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size()
                   && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                ++pos_;
            }
            std::string name(s_.substr(start, pos_ - start));
            auto it = std::find(vars_->begin(), vars_->end(), name);
            if (it != vars_->end()) {
                return MPoly::variable(vars_, static_cast<std::size_t>(it - vars_->begin()));
            }
            if (name == "i" || name == "I") return MPoly::constant(vars_, GaussRat::i());
            fail("unknown symbol '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    const Vars& vars_;
};

}  // namespace

MPoly parse_poly(std::string_view text, const Vars& vars)
{
    return PolyParser(text, vars).parse();
}

}  // namespace absconic
