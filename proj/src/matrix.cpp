#include "absconic/matrix.hpp"

#include <utility>

namespace absconic {

namespace {

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& a)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = row;
        while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
        if (piv == a.rows()) continue;
        if (piv != row) {
            for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(piv, c), a(row, c));
        }
        GaussRat inv = a(row, col).inverse();
        for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || a(r, col).is_zero()) continue;
            GaussRat f = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

void scale_canonically(std::vector<GaussRat*>& entries)
{
    GaussRat* lead = nullptr;
    for (auto* e : entries) {
        if (!e->is_zero()) {
            lead = e;
            break;
        }
    }
    if (lead == nullptr) return;
    GaussRat inv = lead->inverse();
    for (auto* e : entries) *e *= inv;
    Int den = 1;
    for (auto* e : entries) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e->re().get_den_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e->im().get_den_mpz_t());
    }
    Int num = 0;
    for (auto* e : entries) {
        Rat a = e->re() * den;
        Rat b = e->im() * den;
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), a.get_num_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), b.get_num_mpz_t());
    }
    Rat s(den, num);
    s.canonicalize();
    for (auto* e : entries) *e *= GaussRat(s);
}

}  // namespace

QVector operator*(const QMatrix& m, const QVector& v)
{
    if (m.cols() != v.size()) throw DomainError("matrix-vector product: dimension mismatch");
    QVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        GaussRat acc(0);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!m(r, c).is_zero() && !v[c].is_zero()) acc += m(r, c) * v[c];
        }
        out[r] = std::move(acc);
    }
    return out;
}

GaussRat determinant(const QMatrix& m)
{
    if (!m.is_square()) throw DomainError("determinant of a non-square matrix");
    QMatrix a = m;
    GaussRat det(1);
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) return GaussRat(0);
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
            det = -det;
        }
        det *= a(col, col);
        GaussRat inv = a(col, col).inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a(r, col).is_zero()) continue;
            GaussRat f = a(r, col) * inv;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
        }
    }
    return det;
}

QMatrix adjugate(const QMatrix& m)
{
    if (!m.is_square()) throw DomainError("adjugate of a non-square matrix");
    const std::size_t n = m.rows();
    QMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = GaussRat(1);
        return adj;
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            QMatrix minor(n - 1, n - 1);
            for (std::size_t i = 0, mi = 0; i < n; ++i) {
                if (i == r) continue;
                for (std::size_t j = 0, mj = 0; j < n; ++j) {
                    if (j == c) continue;
                    minor(mi, mj++) = m(i, j);
                }
                ++mi;
            }
            GaussRat d = determinant(minor);
            adj(c, r) = ((r + c) % 2 == 0) ? d : -d;
        }
    }
    return adj;
}

QMatrix inverse(const QMatrix& m)
{
    if (!m.is_square()) throw DomainError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = GaussRat(1);
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw DegenerateError("matrix is singular");
    QMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
    }
    return inv;
}

std::size_t rank(const QMatrix& m)
{
    QMatrix a = m;
    return rref(a).size();
}

std::vector<QVector> nullspace(const QMatrix& m)
{
    QMatrix a = m;
    auto piv = rref(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        QVector v(m.cols());
        v[f] = GaussRat(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVector> solve_linear(const QMatrix& m, const QVector& b)
{
    if (b.size() != m.rows()) throw DomainError("solve_linear: dimension mismatch");
    QMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    QVector x(m.cols());
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, m.cols());
    return x;
}

QVector cross(const QVector& a, const QVector& b)
{
    if (a.size() != 3 || b.size() != 3) throw DomainError("cross product needs 3-vectors");
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

GaussRat dot(const QVector& a, const QVector& b)
{
    if (a.size() != b.size()) throw DomainError("dot product: dimension mismatch");
    GaussRat acc(0);
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
    return acc;
}

bool is_zero_vector(const QVector& v)
{
    for (const auto& x : v) {
        if (!x.is_zero()) return false;
    }
    return true;
}

QVector normalize_vector(const QVector& v)
{
    QVector out = v;
    std::vector<GaussRat*> ptrs;
    for (auto& x : out) ptrs.push_back(&x);
    scale_canonically(ptrs);
    return out;
}

QMatrix normalize_matrix(const QMatrix& m)
{
    QMatrix out = m;
    std::vector<GaussRat*> ptrs;
    for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = 0; c < out.cols(); ++c) ptrs.push_back(&out(r, c));
    }
    scale_canonically(ptrs);
    return out;
}

bool proportional(const QVector& a, const QVector& b)
{
    return a.size() == b.size() && normalize_vector(a) == normalize_vector(b);
}

bool proportional(const QMatrix& a, const QMatrix& b)
{
    return a.rows() == b.rows() && a.cols() == b.cols() && normalize_matrix(a) == normalize_matrix(b);
}

QMatrix conj(const QMatrix& m)
{
    QMatrix out = m;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).conj();
    }
    return out;
}

}  // namespace absconic
