#pragma once

#include "absconic/matrix.hpp"
#include "absconic/mpoly.hpp"

#include <optional>
#include <span>
#include <utility>

namespace absconic {

using PolyMatrix = Matrix<MPoly>;

/// F o phi_A: every form variable v_r is replaced by sum_c A(r,c) v_c.
/// The form variables are the first A.rows() variables of F's ring unless
/// `form_vars` names them explicitly.
MPoly compose_linear(const MPoly& form, const QMatrix& a);
MPoly compose_linear(const MPoly& form, const QMatrix& a, std::span<const std::size_t> form_vars);
/// Symbolic version: the entries of `a` live in a ring that contains the
/// variables of `form`; the result lives in that ring.
MPoly compose_linear(const MPoly& form, const PolyMatrix& a, std::span<const std::size_t> form_vars);

/// Exact quotient f / g; throws DomainError when g does not divide f.
MPoly divide_exact(const MPoly& f, const MPoly& g);
/// Multivariate division by a single divisor with respect to lex order.
std::pair<MPoly, MPoly> divide(const MPoly& f, const MPoly& g);
bool divides(const MPoly& g, const MPoly& f);

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
MPoly determinant(const PolyMatrix& m);

/// Sylvester matrix of f and g in `var` (degrees taken as actual degrees).
PolyMatrix sylvester_matrix(const MPoly& f, const MPoly& g, std::size_t var);

/// Resultant as the determinant of the Sylvester matrix in `var`.
/// A constant argument c gives c^deg(other).
MPoly resultant(const MPoly& f, const MPoly& g, std::size_t var);
MPoly resultant(const MPoly& f, const MPoly& g, std::string_view var);

/// Discriminant in `var` with the classical sign convention
///   disc(f) = (-1)^(n(n-1)/2) / lc(f) * Res(f, df/dvar),  n = deg_var f,
/// so that disc(a x^2 + b x + c) = b^2 - 4ac.
MPoly discriminant(const MPoly& f, std::size_t var);
MPoly discriminant(const MPoly& f, std::string_view var);

/// Greatest common divisor, canonically normalized (1 for coprime input).
MPoly gcd(const MPoly& f, const MPoly& g);
/// Product of the distinct irreducible factors of f, canonically normalized.
MPoly squarefree_part(const MPoly& f);
/// Largest m such that g^m divides f (g non-constant, f nonzero).
unsigned multiplicity(const MPoly& f, const MPoly& g);

/// q with q^2 proportional to p, canonically normalized (unique up to
/// sign, fixed by the normalization); nullopt when p is not a square up to
/// a scalar factor.
std::optional<MPoly> perfect_square_root(const MPoly& p);

/// Determinant of the 3x3 matrix of second derivatives of a quadratic
/// form in the three given variables. The remaining ring variables are
/// treated as parameters. For a x^2 + b y^2 + c y z + d z^2 this is
/// 2a(4bd - c^2).
MPoly hessian_det(const MPoly& q, std::span<const std::size_t> form_vars);
MPoly hessian_det(const MPoly& q);

/// Coefficients of f with respect to the variables `vars`: pairs of a
/// monomial in those variables and the polynomial multiplying it (same
/// ring, free of `vars`), in descending lex order of the monomial.
std::vector<std::pair<Monomial, MPoly>> coefficients_wrt(const MPoly& f, std::span<const std::size_t> vars);

/// Symmetric coefficient matrix S of a quadratic form q = v^T S v in the
/// given form variables (entries may be parameter polynomials).
PolyMatrix quadratic_form_matrix(const MPoly& q, std::span<const std::size_t> form_vars);

}  // namespace absconic
