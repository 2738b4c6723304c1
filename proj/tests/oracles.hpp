#pragma once

// Independent oracles used by the test and acceptance suites. These are
// deliberately brute-force and must stay independent of the implementation
// paths they check.

#include "jordet/decision.hpp"

namespace oracles {

using namespace jordet;

/// Brute force over F_p at n=2: enumerate every pair (x, y), keep those with
/// x o y = a, and span the sigma-differences against the canonical base pair.
inline SpanAccumulator<FpRing> pair_enumeration_span(const FpRing& ring, const Matrix<FpRing>& a) {
    const auto p = ring.p;
    SpanAccumulator<FpRing> span(static_cast<int>(sym_dim(2)));
    auto [bx, by] = base_pair(ring, a);
    auto base = sigma(ring, bx, by);
    const long total = static_cast<long>(p * p * p * p);
    for (long xc = 0; xc < total; ++xc) {
        Matrix<FpRing> x(ring, 2, 2);
        long t = xc;
        for (int i = 0; i < 4; ++i) {
            x.a[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(t) % p;
            t /= static_cast<long>(p);
        }
        for (long yc = 0; yc < total; ++yc) {
            Matrix<FpRing> y(ring, 2, 2);
            long u = yc;
            for (int i = 0; i < 4; ++i) {
                y.a[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(u) % p;
                u /= static_cast<long>(p);
            }
            if (!equal(ring, jordan(ring, x, y), a)) continue;
            auto d = sigma(ring, x, y);
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = ring.sub(d[i], base[i]);
            span.insert(ring, std::move(d));
        }
    }
    return span;
}

/// Direct solver for the Jordan-derivation space: all linear maps d with
/// d(e_a o e_b) = d(e_a) o e_b + e_a o d(e_b) on all unit pairs and
/// d(I) = 0, bypassing the fiber-slice machinery entirely.
template <class R>
std::vector<Vec<R>> jordan_derivation_space(const R& ring, int n) {
    const int N = n * n;
    std::vector<Vec<R>> rows;
    auto push_constraint = [&](const Matrix<R>& lhs_arg, const Matrix<R>& ta, const Matrix<R>& tb,
                               const Vec<R>& va, const Vec<R>& vb) {
        auto vl = vec(lhs_arg);
        for (int o = 0; o < N; ++o) {
            Vec<R> row(static_cast<std::size_t>(N) * N, ring.zero());
            for (int w = 0; w < N; ++w)
                for (int c = 0; c < N; ++c) {
                    auto coeff = ring.zero();
                    if (w == o) coeff = vl[static_cast<std::size_t>(c)];
                    coeff = ring.sub(coeff, ring.mul(tb.at(o, w), va[static_cast<std::size_t>(c)]));
                    coeff = ring.sub(coeff, ring.mul(ta.at(o, w), vb[static_cast<std::size_t>(c)]));
                    row[static_cast<std::size_t>(w) * N + c] = coeff;
                }
            rows.push_back(std::move(row));
        }
    };
    for (int alpha = 1; alpha <= N; ++alpha) {
        auto [ai, aj] = unflat_index(n, alpha);
        auto ea = unit(ring, n, ai, aj);
        for (int beta = alpha; beta <= N; ++beta) {
            auto [bi, bj] = unflat_index(n, beta);
            auto eb = unit(ring, n, bi, bj);
            push_constraint(jordan(ring, ea, eb), jordan_operator(ring, ea), jordan_operator(ring, eb),
                            vec(ea), vec(eb));
        }
    }
    {
        auto vi = vec(identity(ring, n));
        for (int o = 0; o < N; ++o) {
            Vec<R> row(static_cast<std::size_t>(N) * N, ring.zero());
            for (int c = 0; c < N; ++c) row[static_cast<std::size_t>(o) * N + c] = vi[static_cast<std::size_t>(c)];
            rows.push_back(std::move(row));
        }
    }
    return null_space(ring, rows, N * N);
}

} // namespace oracles
