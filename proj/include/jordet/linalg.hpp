#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "jordet/errors.hpp"
#include "jordet/matrix.hpp"

namespace jordet {

template <class R>
bool vec_is_zero(const R& ring, const Vec<R>& v) {
    for (const auto& x : v)
        if (!ring.is_zero(x)) return false;
    return true;
}

template <class R>
typename R::Elem dot(const R& ring, const Vec<R>& a, const Vec<R>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot length");
    auto acc = ring.zero();
    for (std::size_t i = 0; i < a.size(); ++i) acc = ring.add(acc, ring.mul(a[i], b[i]));
    return acc;
}

/// v -= c * w
template <class R>
void axpy_sub(const R& ring, Vec<R>& v, const typename R::Elem& c, const Vec<R>& w) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ring.sub(v[i], ring.mul(c, w[i]));
}

template <class R>
struct RrefResult {
    Matrix<R> reduced;
    int rank = 0;
    std::vector<int> pivot_cols;
};

/// Unique reduced row-echelon form. Pivot choice: first nonzero entry in
/// column order, rows scaled to unit pivot.
template <class R>
RrefResult<R> rref(const R& ring, Matrix<R> m) {
    static_assert(R::is_field, "rref needs a field ring");
    RrefResult<R> out;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int r = row; r < m.rows; ++r)
            if (!ring.is_zero(m.at(r, col))) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(row, c));
        auto inv_p = ring.inv(m.at(row, col));
        for (int c = col; c < m.cols; ++c) m.at(row, c) = ring.mul(inv_p, m.at(row, c));
        for (int r = 0; r < m.rows; ++r) {
            if (r == row || ring.is_zero(m.at(r, col))) continue;
            auto f = m.at(r, col);
            for (int c = col; c < m.cols; ++c)
                m.at(r, c) = ring.sub(m.at(r, c), ring.mul(f, m.at(row, c)));
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.rank = row;
    out.reduced = std::move(m);
    return out;
}

template <class R>
int rank(const R& ring, const Matrix<R>& m) {
    return rref(ring, m).rank;
}

template <class R>
struct LinearSolution {
    Vec<R> particular;
    std::vector<Vec<R>> kernel_basis;
};

/// Solves a x = b. Returns one particular solution plus a basis of the
/// homogeneous kernel, or nullopt when inconsistent.
template <class R>
std::optional<LinearSolution<R>> solve_linear(const R& ring, const Matrix<R>& a, const Vec<R>& b) {
    static_assert(R::is_field, "solve_linear needs a field ring");
    if (static_cast<int>(b.size()) != a.rows) throw DimensionMismatch("solve_linear rhs length");
    Matrix<R> aug(ring, a.rows, a.cols + 1);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols) = b[static_cast<std::size_t>(i)];
    }
    auto rr = rref(ring, std::move(aug));
    if (!rr.pivot_cols.empty() && rr.pivot_cols.back() == a.cols) return std::nullopt;

    LinearSolution<R> sol;
    sol.particular.assign(static_cast<std::size_t>(a.cols), ring.zero());
    std::vector<int> pivot_of_col(static_cast<std::size_t>(a.cols), -1);
    for (int r = 0; r < rr.rank; ++r) {
        int pc = rr.pivot_cols[static_cast<std::size_t>(r)];
        pivot_of_col[static_cast<std::size_t>(pc)] = r;
        sol.particular[static_cast<std::size_t>(pc)] = rr.reduced.at(r, a.cols);
    }
    for (int col = 0; col < a.cols; ++col) {
        if (pivot_of_col[static_cast<std::size_t>(col)] >= 0) continue;
        Vec<R> k(static_cast<std::size_t>(a.cols), ring.zero());
        k[static_cast<std::size_t>(col)] = ring.one();
        for (int r = 0; r < rr.rank; ++r) {
            int pc = rr.pivot_cols[static_cast<std::size_t>(r)];
            k[static_cast<std::size_t>(pc)] = ring.neg(rr.reduced.at(r, col));
        }
        sol.kernel_basis.push_back(std::move(k));
    }
    return sol;
}

/// Incrementally maintained subspace basis in reduced row-echelon form.
/// Insertion order never changes the final basis (it is the canonical rref
/// basis of the span), which is what makes partitioned sweeps mergeable.
template <class R>
class SpanAccumulator {
    static_assert(R::is_field, "SpanAccumulator needs a field ring");

  public:
    explicit SpanAccumulator(int ambient_dim) : ambient_(ambient_dim) {}

    int ambient_dim() const { return ambient_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vec<R>>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    /// Inserts v; returns true iff the rank increased.
    bool insert(const R& ring, Vec<R> v) {
        reduce(ring, v);
        int lead = lead_col(ring, v);
        if (lead < 0) return false;
        auto inv_l = ring.inv(v[static_cast<std::size_t>(lead)]);
        for (auto& x : v) x = ring.mul(inv_l, x);
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            const auto f = basis_[r][static_cast<std::size_t>(lead)]; // copy: row is modified below
            if (!ring.is_zero(f)) axpy_sub(ring, basis_[r], f, v);
        }
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
        auto idx = static_cast<std::size_t>(pos - pivots_.begin());
        pivots_.insert(pos, lead);
        basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
        return true;
    }

    bool contains(const R& ring, Vec<R> v) const {
        reduce(ring, v);
        return vec_is_zero(ring, v);
    }

    void merge(const R& ring, const SpanAccumulator& other) {
        for (const auto& row : other.basis_) insert(ring, row);
    }

  private:
    void reduce(const R& ring, Vec<R>& v) const {
        if (static_cast<int>(v.size()) != ambient_) throw DimensionMismatch("span vector length");
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            const auto c = v[static_cast<std::size_t>(pivots_[r])]; // copy: v is modified below
            if (!ring.is_zero(c)) axpy_sub(ring, v, c, basis_[r]);
        }
    }
    int lead_col(const R& ring, const Vec<R>& v) const {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!ring.is_zero(v[i])) return static_cast<int>(i);
        return -1;
    }

    int ambient_;
    std::vector<Vec<R>> basis_;  // rref rows, pivot columns strictly increasing
    std::vector<int> pivots_;
};

/// Canonical rref basis of the null space of the row span of `rows`.
template <class R>
std::vector<Vec<R>> null_space(const R& ring, const std::vector<Vec<R>>& rows, int ambient) {
    Matrix<R> m(ring, static_cast<int>(rows.size()), ambient);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < ambient; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    auto rr = rref(ring, std::move(m));
    std::vector<int> pivot_of_col(static_cast<std::size_t>(ambient), -1);
    for (int r = 0; r < rr.rank; ++r) pivot_of_col[static_cast<std::size_t>(rr.pivot_cols[static_cast<std::size_t>(r)])] = r;
    SpanAccumulator<R> canon(ambient);
    for (int col = 0; col < ambient; ++col) {
        if (pivot_of_col[static_cast<std::size_t>(col)] >= 0) continue;
        Vec<R> k(static_cast<std::size_t>(ambient), ring.zero());
        k[static_cast<std::size_t>(col)] = ring.one();
        for (int r = 0; r < rr.rank; ++r)
            k[static_cast<std::size_t>(rr.pivot_cols[static_cast<std::size_t>(r)])] = ring.neg(rr.reduced.at(r, col));
        canon.insert(ring, std::move(k));
    }
    return canon.basis();
}

} // namespace jordet
