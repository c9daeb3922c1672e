#pragma once

#include "absconic/scalar.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

namespace absconic {

/// Arbitrary-precision real; precision is fixed when a value is created,
/// from the innermost PrecisionScope.
using Real = boost::multiprecision::mpfr_float;

struct Complex {
    Real re;
    Real im;

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b)
    {
        Real n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Complex operator-() const { return {-re, -im}; }
};

Real abs(const Complex& z);
Real arg(const Complex& z);
Complex to_complex(const GaussRat& z);
Real to_real(const Rat& r);

/// Default working precision in bits: ABSCONIC_PRECISION when set to a
/// positive integer, otherwise 128.
unsigned default_precision_bits();

/// Sets the precision of newly created Real values for the lifetime of the
/// scope (per thread).
class PrecisionScope {
  public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

  private:
    unsigned saved_digits_;
};

/// Decimal rendering with `digits` significant digits.
std::string to_decimal(const Real& x, int digits = 20);

/// A root approximation with a radius such that the closed disc around
/// `center` contains a root of the polynomial. When the discs of all roots
/// are pairwise disjoint each contains exactly one root (`isolated`).
struct RootDisc {
    Complex center;
    Real radius;
    bool isolated = false;
};

/// All complex roots of a squarefree univariate polynomial given by its
/// coefficients in ascending degree, by Aberth-Ehrlich iteration at the
/// current precision followed by disc certification.
std::vector<RootDisc> polynomial_roots(const std::vector<GaussRat>& coeffs);

/// Newton refinement of a simple root at the current precision.
Complex refine_root(const std::vector<GaussRat>& coeffs, Complex z);

}  // namespace absconic
