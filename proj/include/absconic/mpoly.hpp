#pragma once

#include "absconic/monomial.hpp"
#include "absconic/scalar.hpp"

#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace absconic {

using VarList = std::vector<std::string>;
using Vars = std::shared_ptr<const VarList>;

Vars make_vars(VarList names);
Vars make_vars(std::initializer_list<std::string> names);
bool same_vars(const Vars& a, const Vars& b);
/// Union of two variable lists, keeping the order of `a` and appending new
/// names of `b`.
Vars merge_vars(const Vars& a, const Vars& b);

/// Sparse multivariate polynomial over the Gaussian rationals.
///
/// Terms are kept sorted by descending lexicographic order on the declared
/// variable order, with no zero coefficients. Two polynomials with the same
/// variable list and the same terms compare equal.
class MPoly {
  public:
    using Term = std::pair<Monomial, GaussRat>;

    MPoly() = default;
    explicit MPoly(Vars vars);

    static MPoly constant(Vars vars, GaussRat c);
    static MPoly variable(Vars vars, std::size_t index);
    static MPoly variable(Vars vars, std::string_view name);
    static MPoly monomial(Vars vars, const Monomial& m, GaussRat c = GaussRat(1));
    /// Builds from arbitrary terms; duplicates are summed, zeros dropped.
    static MPoly from_terms(Vars vars, std::vector<Term> terms);

    const Vars& vars() const { return vars_; }
    std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
    std::size_t index_of(std::string_view name) const;
    bool has_var(std::string_view name) const;

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_real() const;
    /// Lex-leading term. Requires a nonzero polynomial.
    const Term& leading_term() const { return terms_.front(); }
    GaussRat constant_term() const;

    int total_degree() const;
    int degree(std::size_t var) const;
    int degree(std::string_view name) const { return degree(index_of(name)); }
    bool is_homogeneous() const;
    /// Variables that occur with positive exponent.
    std::vector<std::size_t> support() const;

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    MPoly& operator*=(const GaussRat& c);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const GaussRat& c) { return a *= c; }
    friend MPoly operator*(const GaussRat& c, MPoly a) { return a *= c; }
    MPoly operator-() const;
    friend bool operator==(const MPoly& a, const MPoly& b);

    MPoly mul_term(const Monomial& m, const GaussRat& c) const;
    MPoly pow(unsigned e) const;
    MPoly derivative(std::size_t var) const;
    MPoly derivative(std::string_view name) const { return derivative(index_of(name)); }
    /// Replaces variable `var` by `value` (same ring).
    MPoly substitute(std::size_t var, const MPoly& value) const;
    /// Simultaneous substitution of every variable; `values[k]` replaces
    /// variable k. All values must live in a common ring, which is the ring
    /// of the result.
    MPoly substitute_all(std::span<const MPoly> values) const;
    GaussRat evaluate(std::span<const GaussRat> point) const;
    /// Coefficients as a polynomial in `var`: result[k] multiplies var^k.
    std::vector<MPoly> coefficients_in(std::size_t var) const;
    static MPoly from_coefficients(const std::vector<MPoly>& coeffs, std::size_t var);

    MPoly conj() const;
    /// Canonical representative of the scalar class of this polynomial:
    /// the lex-leading coefficient becomes a positive integer and the real
    /// and imaginary parts of all coefficients are coprime integers.
    MPoly normalized() const;
    /// Same polynomial expressed over `target`; every occurring variable
    /// must exist there.
    MPoly in_ring(const Vars& target) const;

    std::string to_string() const;

  private:
    void check_ring(const MPoly& o) const;
    void add_scaled(const MPoly& o, const GaussRat& c);

    Vars vars_;
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const MPoly& p);

/// Parses an expression such as "x^2 - 3/4*x*y + (1+2*i)*z^3". The symbol
/// `i` denotes the imaginary unit unless it is one of the ring variables.
MPoly parse_poly(std::string_view text, const Vars& vars);

/// True when a and b agree up to a nonzero scalar factor.
bool proportional(const MPoly& a, const MPoly& b);

}  // namespace absconic
