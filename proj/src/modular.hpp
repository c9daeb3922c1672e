#pragma once

// Word-size prime fields, Chinese remaindering and rational reconstruction
// shared by the modular algorithms.

#include "absconic/scalar.hpp"
#include "gb_engine.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>

namespace absconic::modp {

// ---------------------------------------------------------------------------
// Word-size prime fields. p < 2^62 and p = 3 mod 4, so F_p[i] is a field.

inline thread_local std::uint64_t g_prime = 0;

inline thread_local long double g_prime_inv = 0;

// Quotient estimated in extended precision; off by a few units, which the
// signed correction absorbs (valid for p < 2^62).
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b)
{
    const auto q = static_cast<std::uint64_t>(static_cast<long double>(a) * static_cast<long double>(b) * g_prime_inv);
    auto r = static_cast<std::int64_t>(a * b - q * g_prime);
    while (r < 0) r += static_cast<std::int64_t>(g_prime);
    while (r >= static_cast<std::int64_t>(g_prime)) r -= static_cast<std::int64_t>(g_prime);
    return static_cast<std::uint64_t>(r);
}

inline void set_prime(std::uint64_t p)
{
    g_prime = p;
    g_prime_inv = 1.0L / static_cast<long double>(p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e)
{
    std::uint64_t r = 1;
    while (e != 0) {
        if ((e & 1U) != 0) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1U;
    }
    return r;
}

struct Fp {
    std::uint64_t v = 0;

    Fp() = default;
    Fp(long x)  // NOLINT(google-explicit-constructor)
    {
        long m = x % static_cast<long>(g_prime);
        v = static_cast<std::uint64_t>(m < 0 ? m + static_cast<long>(g_prime) : m);
    }
    static Fp raw(std::uint64_t x)
    {
        Fp f;
        f.v = x;
        return f;
    }

    bool is_zero() const { return v == 0; }
    bool is_one() const { return v == 1; }
    Fp inverse() const { return raw(powmod(v, g_prime - 2)); }
    Fp operator-() const { return raw(v == 0 ? 0 : g_prime - v); }
    friend Fp operator+(Fp a, Fp b)
    {
        std::uint64_t s = a.v + b.v;
        return raw(s >= g_prime ? s - g_prime : s);
    }
    friend Fp operator-(Fp a, Fp b) { return raw(a.v >= b.v ? a.v - b.v : a.v + g_prime - b.v); }
    friend Fp operator*(Fp a, Fp b) { return raw(mulmod(a.v, b.v)); }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
};

struct Fp2 {
    Fp a;
    Fp b;

    Fp2() = default;
    Fp2(long x) : a(x) {}  // NOLINT(google-explicit-constructor)
    Fp2(Fp re, Fp im) : a(re), b(im) {}

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool is_one() const { return a.is_one() && b.is_zero(); }
    Fp2 inverse() const
    {
        Fp n = (a * a + b * b).inverse();
        return {a * n, -(b * n)};
    }
    Fp2 operator-() const { return {-a, -b}; }
    friend Fp2 operator+(const Fp2& x, const Fp2& y) { return {x.a + y.a, x.b + y.b}; }
    friend Fp2 operator-(const Fp2& x, const Fp2& y) { return {x.a - y.a, x.b - y.b}; }
    friend Fp2 operator*(const Fp2& x, const Fp2& y) { return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a}; }
    friend bool operator==(const Fp2& x, const Fp2& y) { return x.a == y.a && x.b == y.b; }
};

inline std::optional<Fp> to_fp(const Rat& r)
{
    std::uint64_t num = mpz_fdiv_ui(r.get_num_mpz_t(), g_prime);
    std::uint64_t den = mpz_fdiv_ui(r.get_den_mpz_t(), g_prime);
    if (den == 0) return std::nullopt;
    return Fp::raw(mulmod(num, powmod(den, g_prime - 2)));
}

template <class K>
std::optional<K> to_field(const GaussRat& z);

template <>
inline std::optional<Fp> to_field<Fp>(const GaussRat& z)
{
    return to_fp(z.re());
}

template <>
inline std::optional<Fp2> to_field<Fp2>(const GaussRat& z)
{
    auto a = to_fp(z.re());
    auto b = to_fp(z.im());
    if (!a || !b) return std::nullopt;
    return Fp2(*a, *b);
}

template <>
inline std::optional<GaussRat> to_field<GaussRat>(const GaussRat& z)
{
    return z;
}

template <class K>
inline std::optional<gb::Poly<K>> to_engine(const MPoly& f)
{
    gb::Poly<K> p;
    for (const auto& [m, c] : f.terms()) {
        auto k = to_field<K>(c);
        if (!k) return std::nullopt;
        if (!k->is_zero()) p.t.push_back({m, *k});
    }
    p.sugar = f.is_zero() ? 0 : static_cast<unsigned>(f.total_degree());
    return p;
}

inline std::uint64_t next_prime(std::uint64_t below)
{
    Int z;
    std::uint64_t c = below - 1;
    while (true) {
        if (c % 4 == 3) {
            mpz_set_ui(z.get_mpz_t(), c);
            if (mpz_probab_prime_p(z.get_mpz_t(), 30) != 0) return c;
        }
        --c;
    }
}

template <class K>
std::pair<std::uint64_t, std::uint64_t> residues(const K& k);

template <>
inline std::pair<std::uint64_t, std::uint64_t> residues<Fp>(const Fp& k)
{
    return {k.v, 0};
}

template <>
inline std::pair<std::uint64_t, std::uint64_t> residues<Fp2>(const Fp2& k)
{
    return {k.a.v, k.b.v};
}

inline Int crt(const Int& x, const Int& m, std::uint64_t y, std::uint64_t p)
{
    // x + m * ((y - x) * m^{-1} mod p)
    std::uint64_t xm = mpz_fdiv_ui(x.get_mpz_t(), p);
    std::uint64_t mm = mpz_fdiv_ui(m.get_mpz_t(), p);
    std::uint64_t diff = y >= xm ? y - xm : y + p - xm;
    std::uint64_t t = mulmod(diff, powmod(mm, p - 2));
    Int r = m;
    r *= static_cast<unsigned long>(t);
    r += x;
    return r;
}

/// Wang's rational reconstruction: a/b = x mod m with |a|, b <= sqrt(m/2).
inline std::optional<Rat> rational_reconstruction(const Int& x, const Int& m)
{
    Int bound;
    Int half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    Int r0 = m;
    Int r1 = x % m;
    if (r1 < 0) r1 += m;
    Int t0 = 0;
    Int t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (abs(t1) > bound || t1 == 0) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rat q(r1, t1);
    q.canonicalize();
    return q;
}

/// Krull dimension read off the leading monomials of a Groebner basis of a
/// proper ideal in n variables.
inline int dimension_from_leading(std::span<const Monomial> lms, std::size_t n)
{
    std::vector<std::uint32_t> masks;
    for (const auto& m : lms) masks.push_back(gb::divmask(m));
    int best = 0;
    for (std::uint32_t subset = 0; subset < (1U << n); ++subset) {
        int size = std::popcount(subset);
        if (size <= best) continue;
        // Independent: no leading monomial uses only variables of the subset.
        bool independent = std::none_of(masks.begin(), masks.end(), [&](std::uint32_t m) { return (m & ~subset) == 0; });
        if (independent) best = size;
    }
    return best;
}

}  // namespace absconic::modp
