#pragma once

#include "absconic/groebner.hpp"
#include "absconic/matrix.hpp"
#include "absconic/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace absconic {

/// A solution that could not be certified as a Gaussian rational point:
/// per-coordinate centers with a common radius. The radius bounds the
/// distance to the separating coordinate's root rigorously and is
/// propagated to the coordinates to first order.
struct BoxedSolution {
    std::vector<Complex> center;
    Real radius;
    bool isolated = false;
};

struct SolutionSet {
    Vars vars;
    /// -1 for no solutions, 0 for finitely many, otherwise the dimension of
    /// the variety (solutions are then not enumerated).
    int dimension = -1;
    /// Number of distinct solutions (finite case).
    std::size_t count = 0;
    /// Solutions with Gaussian rational coordinates; each has been checked
    /// by exact substitution into every generator.
    std::vector<QVector> exact;
    /// The remaining solutions.
    std::vector<BoxedSolution> boxed;
    /// Human-readable note on positive-dimensional or uncertified parts.
    std::string residual;

    bool finite() const { return dimension == 0 || dimension == -1; }
};

struct SolveOptions {
    /// Working precision for root isolation; 0 means default_precision_bits().
    unsigned precision_bits = 0;
};

/// The distinct points of a zero-dimensional ideal as t = sum weights_v x_v
/// running over the roots of the monic squarefree `minpoly`, with
/// x_v = numerators[v](t) / minpoly'(t). Computed modulo primes and lifted;
/// the lift is accepted once two further primes agree with it. The unit
/// ideal gives dimension -1, a positive-dimensional one only its dimension.
struct UnivariateRepresentation {
    Vars vars;
    int dimension = -1;
    std::vector<GaussRat> weights;
    std::vector<GaussRat> minpoly;
    std::vector<std::vector<GaussRat>> numerators;
};

UnivariateRepresentation univariate_representation(const Ideal& ideal);

/// All solutions of a zero-dimensional system: exact Gaussian rational ones
/// and isolating boxes for the rest. Positive-dimensional input is
/// reported, not enumerated.
SolutionSet solve_zero_dim(const Ideal& ideal, const SolveOptions& options = {});

/// Product of f over the distinct points of a zero-dimensional ideal: the
/// determinant of multiplication by f on the radical quotient. The
/// ideal's variables must occur in f's ring; f's remaining variables are
/// parameters and survive in the result.
MPoly norm_over_zero_set(const Ideal& points, const MPoly& f);

/// Conditions on the parameters under which the binary form p (homogeneous
/// of degree 2k in the variables u, v; coefficients polynomial in the other
/// ring variables) is the square of a binary form of degree k. Introduces
/// the k+1 coefficients of the unknown root, equates coefficients and
/// eliminates the unknowns. The result lives in the ring of the remaining
/// variables.
Ideal perfect_square_conditions(const MPoly& p, std::size_t u, std::size_t v);

/// The 2k+1 coefficient equations p = (c_0 u^k + ... + c_k v^k)^2 before
/// elimination, in a ring that appends the unknowns c0..ck to p's ring.
std::vector<MPoly> perfect_square_equations(const MPoly& p, std::size_t u, std::size_t v);

}  // namespace absconic
