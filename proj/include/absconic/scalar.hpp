#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace absconic {

/// Exact rational number. gmpxx keeps values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p", "-p" or "p/q". Decimal notation is rejected.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);

/// Gaussian rational re + i*im.
class GaussRat {
  public:
    GaussRat() = default;
    GaussRat(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    GaussRat(Rat re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT(google-explicit-constructor)
    GaussRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussRat i() { return {Rat(0), Rat(1)}; }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussRat conj() const { return {re_, -im_}; }
    /// |z|^2 = z * conj(z).
    Rat norm() const { return re_ * re_ + im_ * im_; }
    GaussRat inverse() const;

    GaussRat& operator+=(const GaussRat& o);
    GaussRat& operator-=(const GaussRat& o);
    GaussRat& operator*=(const GaussRat& o);
    GaussRat& operator/=(const GaussRat& o);

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    GaussRat operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussRat& a, const GaussRat& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Total order used for canonical sorting only (re first, then im).
    friend std::strong_ordering operator<=>(const GaussRat& a, const GaussRat& b);

  private:
    Rat re_;
    Rat im_;
};

GaussRat pow(GaussRat base, unsigned exp);
std::string to_string(const GaussRat& z);
std::ostream& operator<<(std::ostream& os, const GaussRat& z);

/// Parses "p/q", "p/q+r/s*i", "i", "-2*i" style literals.
GaussRat parse_gauss(std::string_view text);

std::size_t hash_value(const Rat& r);

}  // namespace absconic
