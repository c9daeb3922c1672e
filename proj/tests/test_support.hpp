#pragma once

#include "absconic/algebra.hpp"
#include "absconic/matrix.hpp"
#include "absconic/mpoly.hpp"

#include <random>

namespace absconic::testing {

/// Dual picture of a torus with a worked-out calibration in the literature,
/// coefficients transcribed exactly.
inline const char* const kExampleQuartic =
    "x^4 + (-81/32*y^2 - 32/81*y*z - 8/9*z^2)*x^2 + 6561/4096*y^4 + 1/2*y^3*z - 10/9*y^2*z^2"
    " - 1755136/77058945*y*z^3 + 3008303104/905057309025*z^4";

/// Image-plane conic that calibrates the camera for kExampleQuartic.
inline const char* const kExampleAbsolute = "80478208*x^2 + 80478208*y^2 - 3692252160*y*z + 99394940025*z^2";

inline GaussRat small_rat(std::mt19937& rng, long range = 5)
{
    std::uniform_int_distribution<long> num(-range, range);
    std::uniform_int_distribution<long> den(1, range);
    return GaussRat(Rat(num(rng), den(rng)));
}

inline QMatrix random_invertible(std::mt19937& rng, long range = 3)
{
    std::uniform_int_distribution<long> coef(-range, range);
    while (true) {
        QMatrix m(3, 3);
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t c = 0; c < 3; ++c) m(r, c) = GaussRat(coef(rng));
        }
        if (!determinant(m).is_zero()) return m;
    }
}

inline QVector random_real_vector(std::mt19937& rng, long range = 6)
{
    std::uniform_int_distribution<long> coef(-range, range);
    while (true) {
        QVector v{GaussRat(coef(rng)), GaussRat(coef(rng)), GaussRat(coef(rng))};
        if (!is_zero_vector(v)) return v;
    }
}

}  // namespace absconic::testing
