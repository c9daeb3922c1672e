#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace absconic {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector. Entries beyond the ring's variable count stay zero, so
/// comparisons over the whole array agree with comparisons over the ring.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};

    unsigned degree() const
    {
        unsigned d = 0;
        for (auto x : e) d += x;
        return d;
    }

    bool divides(const Monomial& o) const
    {
        for (std::size_t k = 0; k < kMaxVars; ++k) {
            if (e[k] > o.e[k]) return false;
        }
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial r;
        for (std::size_t k = 0; k < kMaxVars; ++k) r.e[k] = static_cast<std::uint16_t>(a.e[k] + b.e[k]);
        return r;
    }

    /// a / b, assuming b divides a.
    friend Monomial operator/(const Monomial& a, const Monomial& b)
    {
        Monomial r;
        for (std::size_t k = 0; k < kMaxVars; ++k) r.e[k] = static_cast<std::uint16_t>(a.e[k] - b.e[k]);
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline Monomial lcm(const Monomial& a, const Monomial& b)
{
    Monomial r;
    for (std::size_t k = 0; k < kMaxVars; ++k) r.e[k] = a.e[k] > b.e[k] ? a.e[k] : b.e[k];
    return r;
}

inline bool coprime(const Monomial& a, const Monomial& b)
{
    for (std::size_t k = 0; k < kMaxVars; ++k) {
        if (a.e[k] != 0 && b.e[k] != 0) return false;
    }
    return true;
}

/// Lexicographic comparison: negative, zero, positive.
inline int lex_cmp(const Monomial& a, const Monomial& b)
{
    for (std::size_t k = 0; k < kMaxVars; ++k) {
        if (a.e[k] != b.e[k]) return a.e[k] < b.e[k] ? -1 : 1;
    }
    return 0;
}

/// Degree-reverse-lexicographic comparison restricted to indices [lo, hi).
inline int grevlex_cmp(const Monomial& a, const Monomial& b, std::size_t lo = 0,
                       std::size_t hi = kMaxVars)
{
    unsigned da = 0;
    unsigned db = 0;
    for (std::size_t k = lo; k < hi; ++k) {
        da += a.e[k];
        db += b.e[k];
    }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t k = hi; k-- > lo;) {
        if (a.e[k] != b.e[k]) return a.e[k] > b.e[k] ? -1 : 1;
    }
    return 0;
}

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept
    {
        std::size_t h = 1469598103934665603ULL;
        for (auto x : m.e) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

}  // namespace absconic
