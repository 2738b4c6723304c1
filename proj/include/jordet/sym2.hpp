#pragma once

#include <utility>
#include <vector>

#include "jordet/linalg.hpp"
#include "jordet/matrix.hpp"

namespace jordet {

/// Coordinates on the symmetric square Sym^2(M_n).
///
/// Units are flattened row-major and 1-based: e_{ij} -> alpha = (i-1)*n + j,
/// alpha in [1, n^2]. Unordered pairs {alpha, beta} with alpha <= beta are
/// enumerated lexicographically; sym_pos maps a pair to its 0-based position
/// in that enumeration. dim Sym^2 = n^2 (n^2 + 1) / 2.
inline int flat_index(int n, int i, int j) { return (i - 1) * n + j; }

inline std::pair<int, int> unflat_index(int n, int alpha) {
    return {(alpha - 1) / n + 1, (alpha - 1) % n + 1};
}

inline long sym_dim(int n) {
    long nn = static_cast<long>(n) * n;
    return nn * (nn + 1) / 2;
}

inline long sym_pos(int n, int alpha, int beta) {
    long nn = static_cast<long>(n) * n;
    long a = alpha - 1, b = beta - 1; // 0-based, a <= b
    return a * (2 * nn - a - 1) / 2 + b;
}

inline long sym_pos_unordered(int n, int alpha, int beta) {
    return alpha <= beta ? sym_pos(n, alpha, beta) : sym_pos(n, beta, alpha);
}

/// sigma(x, y): coordinates of the unordered pair (x, y) in Sym^2(M_n).
/// Convention: coord{a,b} = x_a y_b + x_b y_a for a < b, and x_a y_a on the
/// diagonal. With this normalization a functional lambda represents the
/// symmetric bilinear map B with B(e_a, e_b) = lambda{a,b}.
template <class R>
Vec<R> sigma(const R& ring, const Matrix<R>& x, const Matrix<R>& y) {
    if (!x.square() || !y.square() || x.rows != y.rows) throw SizeMismatch("sigma operands");
    const int nn = x.rows * x.rows;
    Vec<R> out(static_cast<std::size_t>(sym_dim(x.rows)), ring.zero());
    std::size_t pos = 0;
    for (int a = 0; a < nn; ++a) {
        out[pos++] = ring.mul(x.a[static_cast<std::size_t>(a)], y.a[static_cast<std::size_t>(a)]);
        for (int b = a + 1; b < nn; ++b) {
            out[pos++] = ring.add(ring.mul(x.a[static_cast<std::size_t>(a)], y.a[static_cast<std::size_t>(b)]),
                                  ring.mul(x.a[static_cast<std::size_t>(b)], y.a[static_cast<std::size_t>(a)]));
        }
    }
    return out;
}

/// The n^2 x D matrix J of the linear map induced by the Jordan product:
/// the column at pair {alpha, beta} is vec(e_alpha o e_beta), so that
/// J sigma(x, y) = vec(x o y) for all x, y.
template <class R>
Matrix<R> jordan_sym_matrix(const R& ring, int n) {
    static_assert(R::is_field, "jordan_sym_matrix needs a field ring");
    const long d = sym_dim(n);
    Matrix<R> j(ring, n * n, static_cast<int>(d));
    long col = 0;
    for (int alpha = 1; alpha <= n * n; ++alpha) {
        auto [ai, aj] = unflat_index(n, alpha);
        for (int beta = alpha; beta <= n * n; ++beta) {
            auto [bi, bj] = unflat_index(n, beta);
            // e_{ai,aj} e_{bi,bj} = d(aj,bi) e_{ai,bj}, plus the swapped product
            if (aj == bi) {
                auto& cell = j.at((ai - 1) * n + (bj - 1), static_cast<int>(col));
                cell = ring.add(cell, ring.one());
            }
            if (bj == ai) {
                auto& cell = j.at((bi - 1) * n + (aj - 1), static_cast<int>(col));
                cell = ring.add(cell, ring.one());
            }
            ++col;
        }
    }
    return j;
}

/// Applies J to a Sym^2 coordinate vector without materializing J.
template <class R>
Vec<R> apply_jordan_sym(const R& ring, int n, const Vec<R>& v) {
    if (static_cast<long>(v.size()) != sym_dim(n)) throw DimensionMismatch("sym2 vector length");
    Vec<R> out(static_cast<std::size_t>(n) * n, ring.zero());
    long col = 0;
    for (int alpha = 1; alpha <= n * n; ++alpha) {
        auto [ai, aj] = unflat_index(n, alpha);
        for (int beta = alpha; beta <= n * n; ++beta, ++col) {
            const auto& c = v[static_cast<std::size_t>(col)];
            if (ring.is_zero(c)) continue;
            auto [bi, bj] = unflat_index(n, beta);
            if (aj == bi) {
                auto& cell = out[static_cast<std::size_t>((ai - 1) * n + (bj - 1))];
                cell = ring.add(cell, c);
            }
            if (bj == ai) {
                auto& cell = out[static_cast<std::size_t>((bi - 1) * n + (aj - 1))];
                cell = ring.add(cell, c);
            }
        }
    }
    return out;
}

template <class R>
bool in_jordan_kernel(const R& ring, int n, const Vec<R>& v) {
    return vec_is_zero(ring, apply_jordan_sym(ring, n, v));
}

/// Canonical rref basis of K = ker J. Since 2 is invertible J is onto
/// (A = (A/2) o I), so dim K = D - n^2.
template <class R>
std::vector<Vec<R>> kernel_of_jordan(const R& ring, int n) {
    static_assert(R::is_field, "kernel_of_jordan needs a field ring");
    auto j = jordan_sym_matrix(ring, n);
    std::vector<Vec<R>> rows;
    rows.reserve(static_cast<std::size_t>(j.rows));
    for (int r = 0; r < j.rows; ++r) {
        Vec<R> row(static_cast<std::size_t>(j.cols));
        for (int c = 0; c < j.cols; ++c) row[static_cast<std::size_t>(c)] = j.at(r, c);
        rows.push_back(std::move(row));
    }
    return null_space(ring, rows, j.cols);
}

} // namespace jordet
