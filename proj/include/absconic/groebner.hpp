#pragma once

#include "absconic/mpoly.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace absconic {

/// Term orders. Block is degree-reverse-lex on the first `block` variables,
/// ties broken by degree-reverse-lex on the rest; it eliminates the first
/// block.
enum class TermOrder { Lex, GrevLex, Block };

/// Polynomial ideal with a declared variable and term order. Generators are
/// stored nonzero and canonically normalized.
class Ideal {
  public:
    Ideal() = default;
    Ideal(Vars vars, std::vector<MPoly> generators, TermOrder order = TermOrder::GrevLex, std::size_t block = 0);

    const Vars& vars() const { return vars_; }
    const std::vector<MPoly>& generators() const { return gens_; }
    TermOrder order() const { return order_; }
    std::size_t block() const { return block_; }
    /// True when the generators form the reduced Groebner basis for the
    /// declared order (set by groebner()).
    bool is_groebner() const { return is_gb_; }

    bool is_zero() const { return gens_.empty(); }
    /// Only meaningful for a Groebner basis.
    bool is_unit() const;

    Ideal with_order(TermOrder order, std::size_t block = 0) const;

  private:
    friend struct IdealAccess;
    Vars vars_;
    std::vector<MPoly> gens_;
    TermOrder order_ = TermOrder::GrevLex;
    std::size_t block_ = 0;
    bool is_gb_ = false;
};

/// Leading monomial of f for the given order over the first nvars ring
/// variables.
Monomial leading_monomial(const MPoly& f, TermOrder order, std::size_t block = 0);

/// Reduced Groebner basis, sorted by increasing leading monomial, each
/// element canonically normalized. The unit ideal gives {1}; the zero ideal
/// gives the empty list.
///
/// Computed modulo a sequence of word-size primes, lifted by Chinese
/// remaindering and rational reconstruction, and accepted once an extra
/// prime confirms the lift and every input generator reduces to zero
/// modulo it over the Gaussian rationals.
Ideal groebner(const Ideal& ideal);

/// Same basis computed directly over the Gaussian rationals; slow, kept as
/// a reference implementation.
Ideal groebner_exact(const Ideal& ideal);

/// Normal form of f modulo a Groebner basis (not normalized).
MPoly normal_form(const MPoly& f, const Ideal& gb);
bool contains(const Ideal& gb, const MPoly& f);

/// Repeated normal forms modulo one Groebner basis.
class NormalForm {
  public:
    explicit NormalForm(const Ideal& gb);
    ~NormalForm();
    NormalForm(NormalForm&&) noexcept;
    NormalForm& operator=(NormalForm&&) noexcept;
    MPoly operator()(const MPoly& f) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Krull dimension of the variety; -1 for the unit ideal.
int dimension(const Ideal& ideal);

/// Elimination ideal I ∩ k[remaining variables], as a reduced degree
/// reverse lex basis in a ring without the dropped variables.
Ideal eliminate(const Ideal& ideal, std::span<const std::string> drop);

/// Saturation I : h^infinity, through elimination of an auxiliary
/// variable T from I + (1 - T h).
Ideal saturate(const Ideal& ideal, const MPoly& h);

/// Sum of two ideals over the merged ring.
Ideal operator+(const Ideal& a, const Ideal& b);

}  // namespace absconic
