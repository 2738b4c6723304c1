#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jordet/errors.hpp"
#include "jordet/rings.hpp"

namespace jordet {

template <class R>
using Vec = std::vector<typename R::Elem>;

/// Dense row-major matrix over a ring context R. Entries do not carry the
/// ring; every operation takes the ring object that owns the coefficients.
template <class R>
struct Matrix {
    using S = typename R::Elem;

    int rows = 0;
    int cols = 0;
    std::vector<S> a;

    Matrix() = default;
    Matrix(const R& ring, int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, ring.zero()) {}

    S& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const S& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    bool square() const { return rows == cols; }
};

template <class R>
Matrix<R> identity(const R& ring, int n) {
    Matrix<R> m(ring, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ring.one();
    return m;
}

/// Matrix unit with a single 1 at 1-based position (i, j).
template <class R>
Matrix<R> unit(const R& ring, int n, int i, int j) {
    if (i < 1 || i > n || j < 1 || j > n)
        throw IndexOutOfRange("unit index (" + std::to_string(i) + "," + std::to_string(j) +
                              ") outside [1," + std::to_string(n) + "]");
    Matrix<R> m(ring, n, n);
    m.at(i - 1, j - 1) = ring.one();
    return m;
}

template <class R>
bool equal(const R& ring, const Matrix<R>& x, const Matrix<R>& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (std::size_t k = 0; k < x.a.size(); ++k)
        if (!ring.eq(x.a[k], y.a[k])) return false;
    return true;
}

template <class R>
bool is_zero(const R& ring, const Matrix<R>& x) {
    for (const auto& v : x.a)
        if (!ring.is_zero(v)) return false;
    return true;
}

template <class R>
Matrix<R> add(const R& ring, const Matrix<R>& x, const Matrix<R>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw SizeMismatch("matrix add shape");
    Matrix<R> r = x;
    for (std::size_t k = 0; k < r.a.size(); ++k) r.a[k] = ring.add(r.a[k], y.a[k]);
    return r;
}

template <class R>
Matrix<R> sub(const R& ring, const Matrix<R>& x, const Matrix<R>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw SizeMismatch("matrix sub shape");
    Matrix<R> r = x;
    for (std::size_t k = 0; k < r.a.size(); ++k) r.a[k] = ring.sub(r.a[k], y.a[k]);
    return r;
}

template <class R>
Matrix<R> scale(const R& ring, const typename R::Elem& c, const Matrix<R>& x) {
    Matrix<R> r = x;
    for (auto& v : r.a) v = ring.mul(c, v);
    return r;
}

template <class R>
Matrix<R> mul(const R& ring, const Matrix<R>& x, const Matrix<R>& y) {
    if (x.cols != y.rows) throw SizeMismatch("matrix mul shape");
    Matrix<R> r(ring, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int t = 0; t < x.cols; ++t) {
            const auto& xit = x.at(i, t);
            if (ring.is_zero(xit)) continue;
            for (int j = 0; j < y.cols; ++j)
                r.at(i, j) = ring.add(r.at(i, j), ring.mul(xit, y.at(t, j)));
        }
    return r;
}

template <class R>
Matrix<R> transpose(const R& ring, const Matrix<R>& x) {
    Matrix<R> r(ring, x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

/// Row-major flattening vec: the (i, j) entry lands at position (i-1)*n + (j-1).
template <class R>
Vec<R> vec(const Matrix<R>& x) {
    return x.a;
}

template <class R>
Matrix<R> unvec(const R& ring, int n, const Vec<R>& v) {
    if (static_cast<int>(v.size()) != n * n) throw DimensionMismatch("unvec length");
    Matrix<R> m(ring, n, n);
    m.a = v;
    return m;
}

/// Jordan product x o y = xy + yx.
template <class R>
Matrix<R> jordan(const R& ring, const Matrix<R>& x, const Matrix<R>& y) {
    if (!x.square() || !y.square() || x.rows != y.rows) throw SizeMismatch("jordan operands");
    return add(ring, mul(ring, x, y), mul(ring, y, x));
}

/// The n^2 x n^2 matrix T_x with T_x vec(y) = vec(x o y).
/// Entry at (flat(i,j), flat(k,l)) is x[i][k]*d_{jl} + x[l][j]*d_{ik}.
template <class R>
Matrix<R> jordan_operator(const R& ring, const Matrix<R>& x) {
    static_assert(R::is_field, "jordan_operator needs a field ring");
    if (!x.square()) throw SizeMismatch("jordan_operator operand");
    const int n = x.rows;
    Matrix<R> t(ring, n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const auto& xik = x.at(i, k);
            if (ring.is_zero(xik)) continue;
            for (int j = 0; j < n; ++j) {
                auto& cell = t.at(i * n + j, k * n + j);
                cell = ring.add(cell, xik);
            }
        }
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j) {
            const auto& xlj = x.at(l, j);
            if (ring.is_zero(xlj)) continue;
            for (int i = 0; i < n; ++i) {
                auto& cell = t.at(i * n + j, i * n + l);
                cell = ring.add(cell, xlj);
            }
        }
    return t;
}

template <class R, class Rng>
Matrix<R> random_matrix(const R& ring, int n, Rng& rng) {
    Matrix<R> m(ring, n, n);
    for (auto& v : m.a) v = ring.random_element(rng);
    return m;
}

template <class R>
std::string to_string(const R& ring, const Matrix<R>& m) {
    std::string out;
    for (int i = 0; i < m.rows; ++i) {
        out += i == 0 ? "[" : " ";
        for (int j = 0; j < m.cols; ++j) {
            out += ring.str(m.at(i, j));
            if (j + 1 < m.cols) out += " ";
        }
        out += i + 1 < m.rows ? "\n" : "]";
    }
    return out;
}

} // namespace jordet
