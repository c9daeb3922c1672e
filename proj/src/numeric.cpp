#include "absconic/numeric.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace absconic {

Real abs(const Complex& z) { return sqrt(z.re * z.re + z.im * z.im); }

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Real to_real(const Rat& r)
{
    Real x;
    mpfr_set_q(x.backend().data(), r.get_mpq_t(), MPFR_RNDN);
    return x;
}

Complex to_complex(const GaussRat& z) { return {to_real(z.re()), to_real(z.im())}; }

unsigned default_precision_bits()
{
    if (const char* env = std::getenv("ABSCONIC_PRECISION")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return 128;
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits_(Real::default_precision())
{
    Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits_); }

std::string to_decimal(const Real& x, int digits)
{
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

namespace {

unsigned current_bits() { return static_cast<unsigned>(std::ceil(Real::default_precision() / 0.30103)); }

std::vector<Complex> to_complex_coeffs(const std::vector<GaussRat>& coeffs)
{
    std::vector<Complex> c;
    c.reserve(coeffs.size());
    for (const auto& z : coeffs) c.push_back(to_complex(z));
    return c;
}

/// p(z) and p'(z) by Horner's rule.
std::pair<Complex, Complex> horner(const std::vector<Complex>& c, const Complex& z)
{
    Complex p = c.back();
    Complex d{Real(0), Real(0)};
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        d = d * z + p;
        p = p * z + c[k];
    }
    return {p, d};
}

bool is_zero(const Complex& z) { return z.re == 0 && z.im == 0; }

}  // namespace

std::vector<RootDisc> polynomial_roots(const std::vector<GaussRat>& coeffs)
{
    std::vector<GaussRat> trimmed = coeffs;
    while (!trimmed.empty() && trimmed.back().is_zero()) trimmed.pop_back();
    if (trimmed.size() <= 1) return {};
    const std::size_t n = trimmed.size() - 1;
    std::vector<Complex> c = to_complex_coeffs(trimmed);
    const unsigned bits = current_bits();
    const Real eps = pow(Real(2), -static_cast<int>(bits) + 6);

    // Start on a circle whose radius is the geometric mean of the root moduli.
    std::vector<Complex> z(n);
    std::size_t low = 0;
    while (trimmed[low].is_zero()) ++low;
    Real radius = low > 0 ? Real(1) : pow(abs(c[0]) / abs(c[n]), Real(1) / Real(n));
    if (radius == 0) radius = 1;
    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    for (std::size_t k = 0; k < n; ++k) {
        Real angle = two_pi * Real(k) / Real(n) + Real(0.4);
        z[k] = {radius * cos(angle), radius * sin(angle)};
    }
    const std::size_t max_iter = 200 + 20 * n + bits;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        bool converged = true;
        for (std::size_t k = 0; k < n; ++k) {
            auto [p, d] = horner(c, z[k]);
            if (is_zero(p)) continue;
            Complex ratio = p / d;
            Complex sum{Real(0), Real(0)};
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                Complex diff = z[k] - z[j];
                if (is_zero(diff)) diff.re = eps;
                sum = sum + Complex{Real(1), Real(0)} / diff;
            }
            Complex w = ratio / (Complex{Real(1), Real(0)} - ratio * sum);
            z[k] = z[k] - w;
            if (abs(w) > eps * (1 + abs(z[k]))) converged = false;
        }
        if (converged) break;
    }
    std::vector<RootDisc> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex r = refine_root(trimmed, z[k]);
        auto [p, d] = horner(c, r);
        Real rad;
        if (is_zero(p)) {
            rad = 0;
        } else if (is_zero(d)) {
            rad = std::numeric_limits<double>::infinity();
        } else {
            rad = Real(n) * abs(p / d) * (1 + pow(Real(2), -20));
        }
        rad += pow(Real(2), -static_cast<int>(bits) + 8) * (1 + abs(r));
        out.push_back({r, rad, false});
    }
    for (std::size_t a = 0; a < n; ++a) {
        bool disjoint = true;
        for (std::size_t b = 0; b < n && disjoint; ++b) {
            if (a != b && abs(out[a].center - out[b].center) <= out[a].radius + out[b].radius) disjoint = false;
        }
        out[a].isolated = disjoint;
    }
    return out;
}

Complex refine_root(const std::vector<GaussRat>& coeffs, Complex z)
{
    std::vector<GaussRat> trimmed = coeffs;
    while (!trimmed.empty() && trimmed.back().is_zero()) trimmed.pop_back();
    if (trimmed.size() <= 1) return z;
    std::vector<Complex> c = to_complex_coeffs(trimmed);
    const unsigned bits = current_bits();
    const Real eps = pow(Real(2), -static_cast<int>(bits) + 4);
    Real last = -1;
    for (int iter = 0; iter < 100 + static_cast<int>(bits); ++iter) {
        auto [p, d] = horner(c, z);
        if (is_zero(p) || is_zero(d)) break;
        Complex step = p / d;
        const Real size = abs(step);
        // Steps that stop shrinking are rounding noise.
        if (iter > 4 && last >= 0 && size > last / 2) break;
        z = z - step;
        if (size <= eps * (1 + abs(z))) break;
        last = size;
    }
    return z;
}

}  // namespace absconic
