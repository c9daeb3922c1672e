#pragma once

#include "absconic/error.hpp"
#include "absconic/numeric.hpp"
#include "absconic/polysolve.hpp"
#include "absconic/projective.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace absconic {

/// find_symmetry's failure: no reflection (count 0, dimension -1), several
/// (count > 1, dimension 0) or a continuum (dimension > 0).
class NotUniquelySolvable : public AlgorithmError {
  public:
    NotUniquelySolvable(const std::string& what, int dimension, std::size_t count)
        : AlgorithmError(what), dimension_(dimension), count_(count)
    {
    }
    int dimension() const { return dimension_; }
    std::size_t count() const { return count_; }

  private:
    int dimension_;
    std::size_t count_;
};

/// Projective reflection preserving `source`, scaled so that A^2 = I and
/// det A = 1. The plane says whether A acts on points or on lines.
struct Reflection {
    ProjMap map;
    Plane plane = Plane::Image;
    MPoly source;

    /// The same involution acting on the other plane (matrix transpose).
    Reflection dual() const;
};

/// The unique projective reflection A with F o A = F. Solves the entries
/// of A^2 - I, det A - 1, tr A + 1 and the coefficients of F - F o A; the
/// trace condition excludes the identity. Throws NotUniquelySolvable.
Reflection find_symmetry(const MPoly& f, Plane plane = Plane::Image);

/// Basis of the quadratic forms q with q o A = q, in the first three
/// variables of `vars`. Always four forms.
std::vector<MPoly> invariant_conic_space(const Reflection& s, const Vars& vars);

/// Two real linear conditions on the six entries (m11, m12, m13, m22, m23,
/// m33) of a conic matrix.
using ConicCondition = std::array<Rat, 6>;

struct SquareConstraints {
    ProjPoint vanishing_e;
    ProjPoint vanishing_f;
    ProjPoint vanishing_g;
    /// Images of the circular points of the square's plane.
    std::pair<ProjPoint, ProjPoint> absolute_points;
    std::array<ConicCondition, 2> conditions;
};

/// Images of a, b, c, d of a square (in this order around the boundary).
SquareConstraints absolute_points_from_square(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c,
                                              const ProjPoint& d);

/// Elliptic absolute from three square pictures. Throws DegenerateError
/// when the six conditions have rank below five (parallel planes) or the
/// resulting conic has real points.
Conic calibrate_squares(std::span<const std::array<ProjPoint, 4>> squares);

/// Elliptic absolute from three reflections of surface-of-revolution
/// pictures (either plane). Same errors as calibrate_squares.
Conic calibrate_revolution(std::span<const Reflection> reflections);
/// Variant taking the curves and finding their reflections first.
Conic calibrate_revolution(std::span<const MPoly> pictures);

struct SingularPoint {
    /// Exact coordinates when the point is Gaussian rational.
    std::optional<ProjPoint> exact;
    /// Numeric coordinates (always present) and a bound on their error.
    std::array<Complex, 3> approx;
    Real radius;
    bool real = false;
    /// Rank-2 Hessian at the point; only decided for exact points.
    std::optional<bool> node;
};

/// Singular points of a squarefree ternary form, chart by chart (z = 1,
/// then z = 0 with y = 1, then (1:0:0)). Throws DomainError for a
/// positive-dimensional singular locus.
std::vector<SingularPoint> singular_points(const MPoly& f, const SolveOptions& options = {});

struct Candidate {
    /// Exact candidates carry both conics; boxed ones only numbers.
    bool exact = false;
    Conic dual_absolute;
    Conic absolute;
    /// Entries (m11, m12, m13, m22, m23, m33) of the dual conic.
    std::array<Complex, 6> numeric;
    Real radius;
    GaussRat hessian;
    bool avoids_singular_points = false;
    bool real = false;
    bool definite = false;
    bool resultant_square = false;
    std::pair<ProjPoint, ProjPoint> nodes;
};

struct CandidateSet {
    Reflection symmetry;
    /// Real conics without real points, sorted canonically.
    std::vector<Candidate> candidates;
    /// Solutions of the system that fail realness or definiteness.
    std::vector<Candidate> rejected;
    /// Node pairs that were tried, and notes on skipped ones.
    std::vector<std::pair<ProjPoint, ProjPoint>> node_pairs;
    std::vector<std::string> notes;
};

/// Candidates for the dual elliptic absolute from a torus picture and its
/// dual. With `node`, only that node and its conjugate are used; otherwise
/// the exact non-real nodes of the picture not fixed by the symmetry are
/// enumerated, which needs a nonzero `picture`.
CandidateSet calibrate_torus(const MPoly& picture, const MPoly& dual_picture, const std::optional<ProjPoint>& node,
                             const SolveOptions& options = {});

}  // namespace absconic
